import pytest

from hecke_atlas.weil import (
    DualityType,
    Inventory,
    NotSelfDual,
    SelfDual,
    make_inertial_class,
)


@pytest.fixture(scope="session")
def six_class_inventory():
    """Six inertial classes hitting every duality-type combination."""
    inv = Inventory()
    inv.add(make_inertial_class("triv", 1, 1, SelfDual(DualityType.ORTHOGONAL, DualityType.ORTHOGONAL), "1"))
    inv.add(make_inertial_class("a", 2, 1, SelfDual(DualityType.SYMPLECTIC, DualityType.SYMPLECTIC), "1"))
    inv.add(make_inertial_class("rho_mix", 2, 1, SelfDual(DualityType.ORTHOGONAL, DualityType.SYMPLECTIC), "eta"))
    inv.add(make_inertial_class("rho_mix2", 2, 2, SelfDual(DualityType.SYMPLECTIC, DualityType.ORTHOGONAL), "eta2"))
    inv.add(make_inertial_class("alpha", 1, 1, NotSelfDual("beta"), "alpha"))
    inv.add(make_inertial_class("beta", 1, 1, NotSelfDual("alpha"), "beta"))
    inv.validate()
    return inv


@pytest.fixture(scope="session")
def extended_inventory(six_class_inventory):
    """The six classes plus a ramified quadratic character ``chi``."""
    inv = Inventory(dict(six_class_inventory.classes))
    inv.add(make_inertial_class("chi", 1, 1, SelfDual(DualityType.ORTHOGONAL, DualityType.ORTHOGONAL), "chi"))
    inv.validate()
    return inv
