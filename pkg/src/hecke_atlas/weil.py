"""Symbolic inertial classes of irreducible Weil-group representations.

An inertial class is described by purely combinatorial data (dimension,
torsion number, duality behaviour).  A point of the associated unramified
twisting orbit is tagged by an exact unit monomial ``c * q**e`` with ``c``
a root of unity and ``e`` a half-integer; the base point of an orbit is
always the point with invariant ``+1`` and is supplied as input data (it is
a choice, never computed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Union

__all__ = [
    "Family",
    "DualityType",
    "DualGroupDescriptor",
    "NotSelfDual",
    "SelfDual",
    "InertialClass",
    "UnitMonomial",
    "InertialPoint",
    "Inventory",
    "make_inertial_class",
    "orbit_point",
    "dual_point",
    "is_of_type",
]


class Family(str, Enum):
    """Families of ambient dual groups."""

    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    UNITARY_L = "unitary_l"


class DualityType(str, Enum):
    """Self-duality type of an irreducible representation."""

    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    CONJUGATE_ORTHOGONAL = "conjugate_orthogonal"
    CONJUGATE_SYMPLECTIC = "conjugate_symplectic"

    @property
    def conjugate_flavour(self) -> bool:
        return self in (
            DualityType.CONJUGATE_ORTHOGONAL,
            DualityType.CONJUGATE_SYMPLECTIC,
        )


@dataclass(frozen=True)
class DualGroupDescriptor:
    """Ambient (dual) group receiving parameters, with its standard embedding.

    ``ambient_dim`` is the size N of the standard representation.  For the
    symplectic family N must be even; the orthogonal family covers both the
    odd case (dual of a symplectic group) and the even case.  The
    ``quasi_split_twist`` sign distinguishes the two quasi-split forms where
    meaningful.
    """

    family: Family
    ambient_dim: int
    quasi_split_twist: int = 1

    def __post_init__(self) -> None:
        if self.ambient_dim < 0:
            raise ValueError("ambient_dim must be >= 0")
        if self.family is Family.SYMPLECTIC and self.ambient_dim % 2 != 0:
            raise ValueError("symplectic ambient dimension must be even")
        if self.quasi_split_twist not in (1, -1):
            raise ValueError("quasi_split_twist must be +1 or -1")

    @property
    def is_symplectic_base_group(self) -> bool:
        """True when the group *under* this dual group is symplectic."""
        return self.family is Family.ORTHOGONAL and self.ambient_dim % 2 == 1


@dataclass(frozen=True)
class NotSelfDual:
    partner_label: str


@dataclass(frozen=True)
class SelfDual:
    type_at_plus: DualityType
    type_at_minus: DualityType


Duality = Union[NotSelfDual, SelfDual]


@dataclass(frozen=True, order=True)
class UnitMonomial:
    """Exact value ``exp(2*pi*i*root) * q**q_exponent``.

    ``root`` is a reduced fraction in [0, 1); ``q_exponent`` is a
    half-integer.  All arithmetic is exact, so equality is decidable.
    """

    root: Fraction
    q_exponent: Fraction

    def __post_init__(self) -> None:
        root = Fraction(self.root) % 1
        qexp = Fraction(self.q_exponent)
        if qexp.denominator not in (1, 2):
            raise ValueError("q_exponent must be a half-integer")
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "q_exponent", qexp)

    # -- constructors -------------------------------------------------
    @staticmethod
    def one() -> "UnitMonomial":
        return UnitMonomial(Fraction(0), Fraction(0))

    @staticmethod
    def minus_one() -> "UnitMonomial":
        return UnitMonomial(Fraction(1, 2), Fraction(0))

    @staticmethod
    def of(root: Fraction | int | str = 0, qexp: Fraction | int | str = 0) -> "UnitMonomial":
        return UnitMonomial(Fraction(root), Fraction(qexp))

    # -- arithmetic ---------------------------------------------------
    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        return UnitMonomial(self.root + other.root, self.q_exponent + other.q_exponent)

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial(-self.root, -self.q_exponent)

    def __pow__(self, n: int) -> "UnitMonomial":
        return UnitMonomial(self.root * n, self.q_exponent * n)

    # -- predicates ---------------------------------------------------
    @property
    def is_one(self) -> bool:
        return self.root == 0 and self.q_exponent == 0

    @property
    def is_minus_one(self) -> bool:
        return self.root == Fraction(1, 2) and self.q_exponent == 0

    @property
    def is_sign(self) -> bool:
        return self.is_one or self.is_minus_one

    @property
    def sign(self) -> int:
        """Return +1/-1 for the two sign values; error otherwise."""
        if self.is_one:
            return 1
        if self.is_minus_one:
            return -1
        raise ValueError(f"{self!r} is not a sign")

    # -- serialization ------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "root": f"{self.root.numerator}/{self.root.denominator}",
            "qexp": f"{2 * self.q_exponent.numerator // self.q_exponent.denominator}/2",
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "UnitMonomial":
        return UnitMonomial(Fraction(data["root"]), Fraction(data["qexp"]))

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        if self.is_minus_one:
            return "-1"
        return f"zeta^({self.root})*q^({self.q_exponent})"


@dataclass(frozen=True)
class InertialClass:
    """An inertial class of an irreducible Weil-group representation.

    ``dim`` is the dimension of any member, ``torsion`` the order of the
    stabilizer of the class under unramified twisting.  ``det_base`` is an
    opaque identifier for the inertial data of the determinant character,
    used only for determinant bookkeeping.
    """

    label: str
    dim: int
    torsion: int
    duality: Duality
    det_base: str = ""

    @property
    def is_self_dual(self) -> bool:
        return isinstance(self.duality, SelfDual)


def make_inertial_class(
    label: str,
    dim: int,
    torsion: int,
    duality: Duality,
    det_base: str = "",
) -> InertialClass:
    """Validate and build an inertial class value."""
    if dim < 1:
        raise ValueError("dim must be positive")
    if torsion < 1:
        raise ValueError("torsion must be positive")
    if isinstance(duality, NotSelfDual):
        if not duality.partner_label:
            raise ValueError("a non-self-dual class needs a partner label")
    elif isinstance(duality, SelfDual):
        flavours = {duality.type_at_plus.conjugate_flavour, duality.type_at_minus.conjugate_flavour}
        if len(flavours) != 1:
            raise ValueError("cannot mix conjugate-dual and plain self-dual type tags")
    else:  # pragma: no cover - defensive
        raise TypeError("duality must be NotSelfDual or SelfDual")
    return InertialClass(label, dim, torsion, duality, det_base)


@dataclass(frozen=True)
class InertialPoint:
    """A point of the twisting orbit of an inertial class."""

    cls: InertialClass
    f: UnitMonomial

    @property
    def is_self_dual_point(self) -> bool:
        return self.cls.is_self_dual and self.f.is_sign

    def sort_key(self):
        f = self.f
        return (
            self.cls.label,
            f.root.numerator,
            f.root.denominator,
            f.q_exponent.numerator,
            f.q_exponent.denominator,
        )


def orbit_point(cls: InertialClass, f: UnitMonomial) -> InertialPoint:
    """The unique orbit element with twisting invariant ``f``."""
    return InertialPoint(cls, f)


def dual_point(p: InertialPoint, inventory: "Inventory | Mapping[str, InertialClass] | None" = None) -> InertialPoint:
    """Contragredient of an orbit point: ``f`` goes to ``f**-1``.

    For a non-self-dual class the result lives on the partner class, which
    must be resolvable through ``inventory``.
    """
    if isinstance(p.cls.duality, SelfDual):
        return InertialPoint(p.cls, p.f.inverse())
    partner_label = p.cls.duality.partner_label
    if inventory is None:
        raise KeyError(f"partner class {partner_label!r} not registered")
    partner = inventory[partner_label]
    return InertialPoint(partner, p.f.inverse())


def _rep_type_at_sign(p: InertialPoint) -> DualityType:
    if not isinstance(p.cls.duality, SelfDual):
        raise ValueError(f"point of class {p.cls.label!r} is not self-dual")
    if not p.f.is_sign:
        raise ValueError(f"point with f={p.f} is not self-dual")
    return p.cls.duality.type_at_plus if p.f.sign == 1 else p.cls.duality.type_at_minus


def is_of_type(p: InertialPoint, g: DualGroupDescriptor) -> bool:
    """Whether the (self-dual) point has the same type as the ambient group."""
    tag = _rep_type_at_sign(p)
    if g.family is Family.UNITARY_L:
        if not tag.conjugate_flavour:
            raise ValueError("a unitary ambient group needs conjugate-dual type tags")
        if g.ambient_dim % 2 == 0:
            return tag is DualityType.CONJUGATE_SYMPLECTIC
        return tag is DualityType.CONJUGATE_ORTHOGONAL
    if tag.conjugate_flavour:
        raise ValueError("conjugate-dual type tags need a unitary ambient group")
    if g.family is Family.ORTHOGONAL:
        return tag is DualityType.ORTHOGONAL
    return tag is DualityType.SYMPLECTIC


@dataclass
class Inventory:
    """A registry of inertial classes, keyed by label."""

    classes: dict[str, InertialClass] = field(default_factory=dict)

    def add(self, cls: InertialClass) -> InertialClass:
        if cls.label in self.classes:
            raise ValueError(f"duplicate class label {cls.label!r}")
        self.classes[cls.label] = cls
        return cls

    def __getitem__(self, label: str) -> InertialClass:
        try:
            return self.classes[label]
        except KeyError:
            raise KeyError(f"partner class {label!r} not registered") from None

    def __contains__(self, label: str) -> bool:
        return label in self.classes

    def __iter__(self):
        return iter(self.classes.values())

    def validate(self) -> None:
        """Check that non-self-dual partner references are symmetric."""
        for cls in self:
            if isinstance(cls.duality, NotSelfDual):
                partner = self[cls.duality.partner_label]
                if not isinstance(partner.duality, NotSelfDual):
                    raise ValueError(f"partner of {cls.label!r} must be non-self-dual")
                if partner.duality.partner_label != cls.label:
                    raise ValueError(f"partner references of {cls.label!r} are not symmetric")
                if partner.dim != cls.dim or partner.torsion != cls.torsion:
                    raise ValueError(f"partner of {cls.label!r} has mismatched dim/torsion")

    # -- serialization ------------------------------------------------
    def to_json_list(self) -> list:
        out = []
        for cls in sorted(self, key=lambda c: c.label):
            if isinstance(cls.duality, NotSelfDual):
                duality = {"kind": "not_self_dual", "partner": cls.duality.partner_label}
            else:
                duality = {
                    "kind": "self_dual",
                    "type_plus": cls.duality.type_at_plus.value,
                    "type_minus": cls.duality.type_at_minus.value,
                }
            out.append(
                {
                    "label": cls.label,
                    "dim": cls.dim,
                    "torsion": cls.torsion,
                    "duality": duality,
                    "det_base": cls.det_base,
                }
            )
        return out

    @staticmethod
    def from_json_list(data: list) -> "Inventory":
        inv = Inventory()
        for entry in data:
            raw = entry["duality"]
            duality: Duality
            if raw["kind"] == "not_self_dual":
                duality = NotSelfDual(raw["partner"])
            elif raw["kind"] == "self_dual":
                duality = SelfDual(DualityType(raw["type_plus"]), DualityType(raw["type_minus"]))
            else:
                raise ValueError(f"unknown duality kind {raw['kind']!r}")
            inv.add(
                make_inertial_class(
                    entry["label"],
                    int(entry["dim"]),
                    int(entry["torsion"]),
                    duality,
                    entry.get("det_base", ""),
                )
            )
        inv.validate()
        return inv

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_json_list(), handle, indent=2)
            handle.write("\n")

    @staticmethod
    def load(path) -> "Inventory":
        with open(path, encoding="utf-8") as handle:
            return Inventory.from_json_list(json.load(handle))
