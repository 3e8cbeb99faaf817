import pytest

from hecke_atlas.params import LDSummand, build_ld_parameter, is_discrete
from hecke_atlas.support import (
    SupportDatum,
    build_levi,
    build_phi_S,
    cuspidal_pairs,
    injectivity_report,
    support_to_json_dict,
    supports,
)
from hecke_atlas.weil import DualGroupDescriptor, Family, UnitMonomial, orbit_point


def triv_parameter(inv, family, dim):
    ambient = DualGroupDescriptor(family, dim)
    point = orbit_point(inv["triv"], UnitMonomial.one())
    return build_ld_parameter([LDSummand(point, 1, dim)], ambient, inv)


@pytest.fixture
def so7_setting(extended_inventory):
    # dual side Sp_6, six copies of the trivial character
    return triv_parameter(extended_inventory, Family.SYMPLECTIC, 6)


@pytest.fixture
def sp4_setting(extended_inventory):
    # dual side SO_5, five copies of the trivial character
    return triv_parameter(extended_inventory, Family.ORTHOGONAL, 5)


def depth_pairs(data):
    return sorted(d.as_dict["triv"] for d in data)


def test_supports_so7(so7_setting):
    assert depth_pairs(supports(so7_setting)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_supports_sp4(sp4_setting):
    assert depth_pairs(supports(sp4_setting)) == [(0, 1), (1, 0), (1, 2), (2, 1)]


def test_supports_empty(extended_inventory):
    inv = extended_inventory
    g2 = DualGroupDescriptor(Family.ORTHOGONAL, 2)
    phi0 = build_ld_parameter(
        [
            LDSummand(orbit_point(inv["alpha"], UnitMonomial.one()), 1),
            LDSummand(orbit_point(inv["beta"], UnitMonomial.one()), 1),
        ],
        g2,
        inv,
    )
    data = supports(phi0)
    assert len(data) == 1
    assert data[0].entries == ()


def test_supports_rejects_unnormed(extended_inventory):
    inv = extended_inventory
    phi = build_ld_parameter(
        [LDSummand(orbit_point(inv["triv"], UnitMonomial.one()), 2)],
        DualGroupDescriptor(Family.SYMPLECTIC, 2),
        inv,
    )
    with pytest.raises(ValueError):
        supports(phi)


def test_build_phi_S_so7(so7_setting, extended_inventory):
    inv = extended_inventory
    S = SupportDatum((("triv", (1, 0)),))
    phi_S, L_S, l_S, d_S = build_phi_S(so7_setting, S, inv)
    assert L_S == 2 and l_S == 1 and d_S == 1
    assert [(s.point.cls.label, s.sl2_dim) for s in phi_S.summands] == [("triv", 2)]
    assert is_discrete(phi_S)


def test_build_phi_S_sp4(sp4_setting, extended_inventory):
    S = SupportDatum((("triv", (1, 0)),))
    phi_S, L_S, l_S, d_S = build_phi_S(sp4_setting, S, extended_inventory)
    assert L_S == 1 and l_S == 0 and d_S == 1
    assert [(s.point.cls.label, s.sl2_dim) for s in phi_S.summands] == [("triv", 1)]


def test_build_phi_S_minus_point_flips_det(so7_setting, extended_inventory):
    S = SupportDatum((("triv", (0, 1)),))
    phi_S, L_S, l_S, d_S = build_phi_S(so7_setting, S, extended_inventory)
    assert L_S == 2 and d_S == 1  # f=-1 with sl2-dim 2 contributes (-1)**2
    S2 = SupportDatum((("triv", (0, 1)),))
    phi_S2, L_S2, _, d_S2 = build_phi_S(sp4_setting_param(extended_inventory), S2, extended_inventory)
    assert L_S2 == 1
    assert d_S2 == -1  # f=-1 with sl2-dim 1 contributes (-1)**1


def sp4_setting_param(inv):
    return triv_parameter(inv, Family.ORTHOGONAL, 5)


def test_build_phi_S_all_zero(so7_setting, extended_inventory):
    S = SupportDatum((("triv", (0, 0)),))
    phi_S, L_S, l_S, d_S = build_phi_S(so7_setting, S, extended_inventory)
    assert phi_S.summands == () and L_S == 0 and l_S == 0 and d_S == 1


def test_build_phi_S_rejects_bad_support(so7_setting, extended_inventory):
    with pytest.raises(ValueError):
        build_phi_S(so7_setting, SupportDatum((("triv", (3, 0)),)), extended_inventory)


def test_build_levi_so7(so7_setting, extended_inventory):
    levi = build_levi(so7_setting, SupportDatum((("triv", (1, 0)),)), extended_inventory)
    assert levi.gl_factors == ((1, 2),)
    assert levi.tail.family is Family.SYMPLECTIC and levi.tail.ambient_dim == 2
    assert levi.tail_rank == 1


def test_build_levi_full_support(sp4_setting, extended_inventory):
    levi = build_levi(sp4_setting, SupportDatum((("triv", (2, 1)),)), extended_inventory)
    assert levi.gl_factors == ()
    assert levi.tail.ambient_dim == 5 and levi.tail_rank == 2


def test_build_levi_non_self_dual(extended_inventory):
    inv = extended_inventory
    g6 = DualGroupDescriptor(Family.ORTHOGONAL, 6)
    phi0 = build_ld_parameter(
        [
            LDSummand(orbit_point(inv["alpha"], UnitMonomial.one()), 1, 3),
            LDSummand(orbit_point(inv["beta"], UnitMonomial.one()), 1, 3),
        ],
        g6,
        inv,
    )
    levi = build_levi(phi0, SupportDatum(()), inv)
    assert levi.gl_factors == ((1, 3),)
    assert levi.tail.ambient_dim == 0


def test_cuspidal_pairs_so7(so7_setting, extended_inventory):
    pairs = cuspidal_pairs(so7_setting, extended_inventory)
    assert len(pairs) == 6  # one alternating character per support
    report = injectivity_report(pairs)
    assert report["duplicates"] == [] and report["flagged"] == []
    assert report["injective_outside_flagged"]


def test_cuspidal_pairs_sp4(sp4_setting, extended_inventory):
    pairs = cuspidal_pairs(sp4_setting, extended_inventory)
    # depth-1 supports carry 2 characters, depth-(2,1) supports carry 4
    counts = {}
    for p in pairs:
        counts[p.S.as_dict["triv"]] = counts.get(p.S.as_dict["triv"], 0) + 1
    assert counts == {(1, 0): 2, (0, 1): 2, (2, 1): 4, (1, 2): 4}
    assert len(pairs) == 12
    report = injectivity_report(pairs)
    assert report["duplicates"] == []
    # the rank-zero tails with two surviving characters are flagged
    flagged_supports = {pairs[i].S.as_dict["triv"] for i in report["flagged"]}
    assert flagged_supports == {(1, 0), (0, 1)}
    assert report["injective_outside_flagged"]


def test_L_S_parity(so7_setting, sp4_setting, extended_inventory):
    for phi0 in (so7_setting, sp4_setting):
        for S in supports(phi0):
            _, L_S, _, _ = build_phi_S(phi0, S, extended_inventory)
            assert L_S % 2 == phi0.ambient.ambient_dim % 2


def test_support_json(so7_setting, extended_inventory):
    pairs = cuspidal_pairs(so7_setting, extended_inventory)
    data = support_to_json_dict(pairs[1])
    assert set(data) == {"S", "phiS", "LS", "lS", "dS", "levi", "epsilon", "epsZ"}
    assert data["dS"] in "+-"
    assert data["levi"]["tail"]["family"] == "symplectic"
