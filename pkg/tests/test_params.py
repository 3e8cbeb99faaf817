from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke_atlas.params import (
    LDSummand,
    alternating_characters,
    brute_force_supercuspidals,
    build_ld_parameter,
    component_group,
    count_supercuspidals,
    det_discrepancy,
    is_discrete,
    is_supercuspidal_shape,
    parameter_from_json_dict,
    parameter_to_json_dict,
    summand_type,
    supercuspidal_corpus,
    supercuspidal_shapes,
    t_invariants,
)
from hecke_atlas.weil import DualGroupDescriptor, Family, UnitMonomial, orbit_point

ONE = UnitMonomial.one()
MINUS = UnitMonomial.minus_one()

SO5 = DualGroupDescriptor(Family.ORTHOGONAL, 5)
SP6 = DualGroupDescriptor(Family.SYMPLECTIC, 6)
SP2 = DualGroupDescriptor(Family.SYMPLECTIC, 2)


def pt(inv, label, f=ONE):
    return orbit_point(inv[label], f)


def test_summand_type_flips_with_even_sl2(extended_inventory):
    triv = pt(extended_inventory, "triv")
    assert summand_type(triv, 2, SP6)  # orthogonal point, even sl2, symplectic ambient
    assert not summand_type(triv, 1, SP6)
    assert summand_type(triv, 3, SO5)
    assert not summand_type(triv, 2, SO5)


def test_build_parameter_validates(extended_inventory):
    inv = extended_inventory
    phi = build_ld_parameter(
        [
            LDSummand(pt(inv, "triv"), 1),
            LDSummand(pt(inv, "triv"), 3),
            LDSummand(pt(inv, "chi"), 1),
        ],
        SO5,
        inv,
    )
    assert phi.total_dim == 5
    with pytest.raises(ValueError):
        build_ld_parameter([LDSummand(pt(inv, "triv"), 2)], SO5, inv)
    with pytest.raises(ValueError):
        build_ld_parameter(
            [LDSummand(orbit_point(inv["triv"], UnitMonomial.of(Fraction(1, 4))), 1)],
            DualGroupDescriptor(Family.ORTHOGONAL, 1),
            inv,
        )


def test_build_parameter_merges_and_is_idempotent(extended_inventory):
    inv = extended_inventory
    s = LDSummand(pt(inv, "triv"), 1)
    phi = build_ld_parameter([s, s, LDSummand(pt(inv, "triv"), 3)], SO5, inv)
    assert phi.summands[0].multiplicity == 2
    again = build_ld_parameter(phi.summands, phi.ambient, inv)
    assert again == phi


def test_nonselfdual_closure_needs_partner(extended_inventory):
    inv = extended_inventory
    g2 = DualGroupDescriptor(Family.ORTHOGONAL, 2)
    phi = build_ld_parameter(
        [LDSummand(pt(inv, "alpha"), 1), LDSummand(pt(inv, "beta"), 1)], g2, inv
    )
    assert phi.total_dim == 2
    with pytest.raises(ValueError):
        build_ld_parameter([LDSummand(pt(inv, "alpha"), 1), LDSummand(pt(inv, "alpha"), 1)], g2, inv)


def so5_example(inv):
    return build_ld_parameter(
        [
            LDSummand(pt(inv, "triv"), 1),
            LDSummand(pt(inv, "triv"), 3),
            LDSummand(pt(inv, "chi"), 1),
        ],
        SO5,
        inv,
    )


def test_supercuspidal_shape_examples(extended_inventory):
    inv = extended_inventory
    assert is_supercuspidal_shape(so5_example(inv))
    # missing sp(1) step of the staircase
    broken = build_ld_parameter(
        [LDSummand(pt(inv, "triv"), 3)], DualGroupDescriptor(Family.ORTHOGONAL, 3), inv
    )
    assert not is_supercuspidal_shape(broken)
    single = build_ld_parameter(
        [LDSummand(pt(inv, "triv"), 1)], DualGroupDescriptor(Family.ORTHOGONAL, 1), inv
    )
    assert is_supercuspidal_shape(single)


def test_component_group_orders(extended_inventory):
    inv = extended_inventory
    assert component_group(so5_example(inv)).order == 8
    single = build_ld_parameter(
        [LDSummand(pt(inv, "triv"), 1)], DualGroupDescriptor(Family.ORTHOGONAL, 1), inv
    )
    assert component_group(single).order == 2
    doubled = build_ld_parameter(
        [LDSummand(pt(inv, "triv"), 1, 2)], DualGroupDescriptor(Family.ORTHOGONAL, 2), inv
    )
    with pytest.raises(ValueError):
        component_group(doubled)


def test_alternating_characters_so5(extended_inventory):
    inv = extended_inventory
    phi = so5_example(inv)
    chars = alternating_characters(phi)
    assert len(chars) == 4
    # within the depth-2 staircase of triv the signs alternate
    for eps in chars:
        assert eps("triv+:sp3") == -eps("triv+:sp1")
    # with an odd-type block present the two forms split evenly
    assert count_supercuspidals(phi, 1) == 2
    assert count_supercuspidals(phi, -1) == 2
    assert t_invariants(phi) == (1, 1)


def test_not_of_type_first_step_forced(extended_inventory):
    inv = extended_inventory
    phi = build_ld_parameter([LDSummand(pt(inv, "triv"), 2)], SP2, inv)
    chars = alternating_characters(phi)
    assert len(chars) == 1
    assert chars[0]("triv+:sp2") == -1


def test_so3_degenerate_counts(extended_inventory):
    inv = extended_inventory
    phi = build_ld_parameter([LDSummand(pt(inv, "triv"), 2)], SP2, inv)
    assert count_supercuspidals(phi, 1) == 0
    assert count_supercuspidals(phi, -1) == 1
    assert brute_force_supercuspidals(phi, 1) == 0
    assert brute_force_supercuspidals(phi, -1) == 1


def test_sp6_example_counts(extended_inventory):
    inv = extended_inventory
    phi = build_ld_parameter(
        [
            LDSummand(pt(inv, "triv"), 2),
            LDSummand(pt(inv, "chi"), 2),
            LDSummand(pt(inv, "a"), 1),
        ],
        SP6,
        inv,
    )
    assert count_supercuspidals(phi, 1) == 1
    assert count_supercuspidals(phi, -1) == 1


@given(st.integers(min_value=1, max_value=12))
def test_block_sign_closed_forms(a):
    prod = 1
    for k in range(1, a + 1):
        prod *= (-1) ** (k - 1)
    assert prod * (-1) ** a == (-1) ** (a * (a + 1) // 2)
    if a % 2 == 0:
        assert (-1) ** (a * (a - 1) // 2) == (-1) ** (a // 2)


def test_corpus_counts_match_brute_force(six_class_inventory):
    corpus = supercuspidal_corpus(six_class_inventory, 9)
    assert len(corpus) >= 200
    for phi in corpus:
        n_odd, n_even = t_invariants(phi)
        plus = count_supercuspidals(phi, 1)
        minus = count_supercuspidals(phi, -1)
        assert plus == brute_force_supercuspidals(phi, 1)
        assert minus == brute_force_supercuspidals(phi, -1)
        assert plus + minus == 2 ** (n_odd + n_even)
        assert plus + minus == len(alternating_characters(phi))


def test_symplectic_base_group_always_has_odd_type_block(six_class_inventory):
    for dim in (1, 3, 5, 7, 9):
        ambient = DualGroupDescriptor(Family.ORTHOGONAL, dim)
        for phi in supercuspidal_shapes(six_class_inventory, ambient):
            n_odd, _ = t_invariants(phi)
            assert n_odd >= 1


def test_is_discrete(extended_inventory):
    inv = extended_inventory
    assert is_discrete(so5_example(inv))
    doubled = build_ld_parameter(
        [LDSummand(pt(inv, "triv"), 1, 2)], DualGroupDescriptor(Family.ORTHOGONAL, 2), inv
    )
    assert not is_discrete(doubled)
    mixed = build_ld_parameter(
        [LDSummand(pt(inv, "alpha"), 1), LDSummand(pt(inv, "beta"), 1)],
        DualGroupDescriptor(Family.ORTHOGONAL, 2),
        inv,
    )
    assert not is_discrete(mixed)
    # sp(2) flips the type: of ambient type in Sp_2, not in O_2
    assert is_discrete(build_ld_parameter([LDSummand(pt(inv, "triv"), 2)], SP2, inv))
    assert not is_discrete(
        build_ld_parameter([LDSummand(pt(inv, "triv"), 2)], DualGroupDescriptor(Family.ORTHOGONAL, 2), inv)
    )


def test_det_discrepancy(extended_inventory):
    inv = extended_inventory
    phi = so5_example(inv)
    assert det_discrepancy(phi, phi) == 1
    # swap the chi (x) sp(1) piece for the unramified-twisted trivial point
    other = build_ld_parameter(
        [
            LDSummand(pt(inv, "triv"), 1),
            LDSummand(pt(inv, "triv"), 3),
            LDSummand(pt(inv, "chi", MINUS), 1),
        ],
        SO5,
        inv,
    )
    assert det_discrepancy(other, phi) == -1
    # a dim-2 class at f=-1 contributes (-1)**2 = +1
    g4 = DualGroupDescriptor(Family.ORTHOGONAL, 4)
    base = build_ld_parameter([LDSummand(pt(inv, "a"), 2)], g4, inv)
    twisted = build_ld_parameter([LDSummand(pt(inv, "a", MINUS), 2)], g4, inv)
    assert det_discrepancy(twisted, base) == 1
    # odd exponent difference on a ramified determinant base is an error
    bad = build_ld_parameter([LDSummand(pt(inv, "chi"), 1), LDSummand(pt(inv, "triv"), 3)], g4, inv)
    good = build_ld_parameter([LDSummand(pt(inv, "triv"), 2), LDSummand(pt(inv, "a"), 1)], g4, inv)
    with pytest.raises(ValueError):
        det_discrepancy(bad, good)


def test_parameter_json_round_trip(extended_inventory):
    inv = extended_inventory
    phi = so5_example(inv)
    data = parameter_to_json_dict(phi)
    assert data["ambient"] == {"family": "orthogonal", "dim": 5}
    assert data["summands"][0] == {"class": "chi", "f": {"root": "0/1", "qexp": "0/2"}, "a": 1, "mult": 1}
    assert parameter_from_json_dict(data, inv) == phi
