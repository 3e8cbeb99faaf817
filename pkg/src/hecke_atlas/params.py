"""Langlands-Deligne parameters as canonical multisets of summands.

A parameter is a multiset of summands ``point (x) sp(a)`` inside a fixed
ambient dual group.  This module provides the supercuspidal shape test,
the summand component group with its alternating sign characters, the
closed-form counting of supercuspidal representations on the two forms of
the group, and an independent brute-force count used as an oracle.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .weil import (
    DualGroupDescriptor,
    Family,
    InertialClass,
    InertialPoint,
    Inventory,
    UnitMonomial,
    dual_point,
    is_of_type,
    orbit_point,
)

__all__ = [
    "LDSummand",
    "LDParameter",
    "ComponentGroup",
    "SignCharacter",
    "summand_type",
    "build_ld_parameter",
    "is_supercuspidal_shape",
    "component_group",
    "alternating_characters",
    "t_invariants",
    "count_supercuspidals",
    "brute_force_supercuspidals",
    "is_discrete",
    "det_discrepancy",
    "supercuspidal_corpus",
    "supercuspidal_shapes",
    "discrete_parameters",
    "normed_parameter",
    "parameter_to_json_dict",
    "parameter_from_json_dict",
]


@dataclass(frozen=True)
class LDSummand:
    """One summand ``point (x) sp(sl2_dim)`` with a multiplicity."""

    point: InertialPoint
    sl2_dim: int
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.sl2_dim < 1:
            raise ValueError("sl2_dim must be >= 1")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")

    @property
    def dim(self) -> int:
        return self.point.cls.dim * self.sl2_dim * self.multiplicity

    def sort_key(self):
        return (*self.point.sort_key(), self.sl2_dim)


@dataclass(frozen=True)
class LDParameter:
    """Canonicalized parameter: ambient group plus sorted summand tuple."""

    ambient: DualGroupDescriptor
    summands: tuple[LDSummand, ...]

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.summands)

    def generator_labels(self) -> list[str]:
        return [_summand_label(s) for s in self.summands]


def _summand_label(s: LDSummand) -> str:
    f = s.point.f
    if f.is_sign:
        tag = "+" if f.sign == 1 else "-"
    else:
        tag = f"({f})"
    return f"{s.point.cls.label}{tag}:sp{s.sl2_dim}"


def summand_type(p: InertialPoint, a: int, g: DualGroupDescriptor) -> bool:
    """Type of ``p (x) sp(a)``: the type of ``p`` flips when ``a`` is even."""
    if a < 1:
        raise ValueError("a must be >= 1")
    return is_of_type(p, g) != (a % 2 == 0)


def build_ld_parameter(
    summands: Iterable[LDSummand],
    ambient: DualGroupDescriptor,
    inventory: Inventory | None = None,
) -> LDParameter:
    """Canonicalize a summand list and validate the parameter invariants.

    Equal ``(point, sl2_dim)`` entries are merged by adding multiplicities.
    The total dimension must match the ambient dimension, and the multiset
    must be stable under taking contragredients of the points (``inventory``
    is needed to resolve partners of non-self-dual classes).
    """
    merged: dict[tuple, LDSummand] = {}
    for s in summands:
        key = (s.point, s.sl2_dim)
        if key in merged:
            old = merged[key]
            merged[key] = LDSummand(s.point, s.sl2_dim, old.multiplicity + s.multiplicity)
        else:
            merged[key] = s
    canonical = tuple(sorted(merged.values(), key=LDSummand.sort_key))

    total = sum(s.dim for s in canonical)
    if total != ambient.ambient_dim:
        raise ValueError(
            f"summand dimension {total} does not match ambient dimension {ambient.ambient_dim}"
        )

    counts = {(s.point, s.sl2_dim): s.multiplicity for s in canonical}
    for (point, a), mult in counts.items():
        dual = dual_point(point, inventory)
        if counts.get((dual, a), 0) != mult:
            raise ValueError(f"multiset is not closed under duality at {_summand_label(LDSummand(point, a))}")

    return LDParameter(ambient, canonical)


def _staircase_groups(phi: LDParameter) -> dict[InertialPoint, list[LDSummand]]:
    groups: dict[InertialPoint, list[LDSummand]] = {}
    for s in phi.summands:
        groups.setdefault(s.point, []).append(s)
    return groups


def is_supercuspidal_shape(phi: LDParameter) -> bool:
    """Whether the summands form the parity staircases of a cuspidal shape.

    Every point must be a self-dual sign point with multiplicity-one
    summands, and the sl2-dimensions at a point must be exactly
    ``{2,4,...,2a}`` (point not of ambient type) or ``{1,3,...,2a-1}``
    (point of ambient type) for some depth ``a >= 1``.
    """
    if not phi.summands:
        return False
    for point, group in _staircase_groups(phi).items():
        if not point.is_self_dual_point:
            return False
        if any(s.multiplicity != 1 for s in group):
            return False
        dims = sorted(s.sl2_dim for s in group)
        depth = len(dims)
        if is_of_type(point, phi.ambient):
            expected = [2 * k - 1 for k in range(1, depth + 1)]
        else:
            expected = [2 * k for k in range(1, depth + 1)]
        if dims != expected:
            return False
    return True


def is_discrete(phi: LDParameter) -> bool:
    """Multiplicity-free with every summand self-dual of the ambient type."""
    for s in phi.summands:
        if s.multiplicity != 1:
            return False
        if not s.point.is_self_dual_point:
            return False
        if not summand_type(s.point, s.sl2_dim, phi.ambient):
            return False
    return True


@dataclass(frozen=True)
class ComponentGroup:
    """Free F2-vector space on summand generators; -id maps to all-ones."""

    generators: tuple[str, ...]

    @property
    def minus_element(self) -> tuple[int, ...]:
        return (1,) * len(self.generators)

    @property
    def order(self) -> int:
        return 2 ** len(self.generators)


def component_group(phi: LDParameter) -> ComponentGroup:
    if any(s.multiplicity != 1 for s in phi.summands):
        raise ValueError("component group requires a multiplicity-free parameter")
    return ComponentGroup(tuple(phi.generator_labels()))


@dataclass(frozen=True)
class SignCharacter:
    """A sign character of the summand component group."""

    values: tuple[tuple[str, int], ...]

    @property
    def value_map(self) -> dict[str, int]:
        return dict(self.values)

    @property
    def eps_Z(self) -> int:
        out = 1
        for _, v in self.values:
            out *= v
        return out

    def __call__(self, generator: str) -> int:
        return self.value_map[generator]


def _blocks(phi: LDParameter) -> list[tuple[InertialPoint, list[LDSummand]]]:
    groups = _staircase_groups(phi)
    out = []
    for point in sorted(groups, key=InertialPoint.sort_key):
        out.append((point, sorted(groups[point], key=lambda s: s.sl2_dim)))
    return out


def alternating_characters(phi: LDParameter) -> list[SignCharacter]:
    """All alternating sign characters of the summand component group.

    Within the staircase of a point the signs alternate starting from the
    first-step value; that value is forced to ``-1`` when the point is not
    of the ambient type and is free otherwise.
    """
    if not is_supercuspidal_shape(phi):
        raise ValueError("alternating characters are defined for cuspidal shapes")
    blocks = _blocks(phi)
    free_choices = []
    for point, _ in blocks:
        free_choices.append((1, -1) if is_of_type(point, phi.ambient) else (-1,))
    out = []
    for firsts in itertools.product(*free_choices):
        values: list[tuple[str, int]] = []
        for (point, group), first in zip(blocks, firsts):
            for k, s in enumerate(group, start=1):
                values.append((_summand_label(s), first * (-1) ** (k - 1)))
        out.append(SignCharacter(tuple(values)))
    return out


def t_invariants(phi: LDParameter, counting_convention: bool = False) -> tuple[int, int]:
    """Counts of ambient-type points with odd / even staircase depth.

    With ``counting_convention`` the odd count is bumped to 1 when it is
    zero, as used by the closed-form supercuspidal count.
    """
    n_odd = n_even = 0
    for point, group in _blocks(phi):
        if is_of_type(point, phi.ambient):
            if len(group) % 2 == 1:
                n_odd += 1
            else:
                n_even += 1
    if counting_convention and n_odd == 0:
        n_odd = 1
    return n_odd, n_even


def _fixed_block_sign(depth: int, of_type: bool) -> int:
    """Value on -id of the (forced part of the) character on one staircase."""
    if of_type:
        if depth % 2 == 1:
            raise ValueError("odd-depth ambient-type staircases carry a free sign")
        return -1 if depth % 4 == 2 else 1
    return (-1) ** (depth * (depth + 1) // 2)


def count_supercuspidals(phi: LDParameter, form: int) -> int:
    """Closed-form count of supercuspidal members on one form of the group.

    Characters are routed to the quasi-split form when their value on the
    image of ``-id`` is ``+1`` and to the companion form otherwise.
    """
    if form not in (1, -1):
        raise ValueError("form must be +1 or -1")
    if not is_supercuspidal_shape(phi):
        raise ValueError("count requires a cuspidal shape")
    n_odd, n_even = t_invariants(phi)
    total = 2 ** (n_odd + n_even)
    if n_odd >= 1:
        plus = total // 2
    else:
        fixed = 1
        for point, group in _blocks(phi):
            of_type = is_of_type(point, phi.ambient)
            if of_type and len(group) % 2 == 1:  # pragma: no cover - n_odd == 0 here
                continue
            fixed *= _fixed_block_sign(len(group), of_type)
        plus = total if fixed == 1 else 0
    return plus if form == 1 else total - plus


def brute_force_supercuspidals(phi: LDParameter, form: int) -> int:
    """Oracle count: enumerate alternating characters and route by eps_Z."""
    if form not in (1, -1):
        raise ValueError("form must be +1 or -1")
    return sum(1 for eps in alternating_characters(phi) if eps.eps_Z == form)


def det_discrepancy(phi: LDParameter, phi0: LDParameter) -> int:
    """Compare determinants; ``+1`` iff the unramified parts agree.

    Each summand contributes ``f**(dim * a * mult)`` to the unramified part
    and exponents of its determinant base label to the ramified bookkeeping.
    Self-dual labels (determinant of order at most two) must cancel modulo
    two; a dual pair carries mutually inverse determinants, so its two sides
    enter with opposite orientations and must cancel exactly.
    """
    unram = UnitMonomial.one()
    ram: dict[tuple[str, bool], int] = {}
    for parameter, expo_sign in ((phi, 1), (phi0, -1)):
        for s in parameter.summands:
            cls = s.point.cls
            e = s.sl2_dim * s.multiplicity
            unram = unram * (s.point.f ** (cls.dim * e * expo_sign))
            if cls.is_self_dual:
                key = (cls.label, True)
                orient = 1
            else:
                partner = cls.duality.partner_label
                key = (min(cls.label, partner), False)
                orient = 1 if cls.label < partner else -1
            ram[key] = ram.get(key, 0) + orient * expo_sign * e
    for (label, self_dual), e in ram.items():
        bad = (e % 2 != 0) if self_dual else (e != 0)
        if bad:
            raise ValueError(f"determinant of orbit {label!r} does not cancel (exponent {e})")
    if not unram.is_sign:
        raise ValueError(f"determinant discrepancy {unram} is not a sign")
    return unram.sign


# ---------------------------------------------------------------------------
# corpus generation


def _staircase_summands(point: InertialPoint, depth: int, ambient: DualGroupDescriptor) -> list[LDSummand]:
    if is_of_type(point, ambient):
        dims = [2 * k - 1 for k in range(1, depth + 1)]
    else:
        dims = [2 * k for k in range(1, depth + 1)]
    return [LDSummand(point, a) for a in dims]


def _staircase_cost(point: InertialPoint, depth: int, ambient: DualGroupDescriptor) -> int:
    if is_of_type(point, ambient):
        return point.cls.dim * depth * depth
    return point.cls.dim * depth * (depth + 1)


def supercuspidal_shapes(
    inventory: Inventory, ambient: DualGroupDescriptor
) -> Iterator[LDParameter]:
    """All cuspidal-shape parameters in ``ambient`` over ``inventory``."""
    conjugate = ambient.family is Family.UNITARY_L
    points = []
    for cls in sorted(inventory, key=lambda c: c.label):
        if not cls.is_self_dual:
            continue
        if cls.duality.type_at_plus.conjugate_flavour != conjugate:
            continue
        points.append(orbit_point(cls, UnitMonomial.one()))
        points.append(orbit_point(cls, UnitMonomial.minus_one()))

    target = ambient.ambient_dim

    def assign(i: int, remaining: int, chosen: list[tuple[InertialPoint, int]]):
        if i == len(points):
            if remaining == 0 and chosen:
                summands: list[LDSummand] = []
                for point, depth in chosen:
                    summands.extend(_staircase_summands(point, depth, ambient))
                yield build_ld_parameter(summands, ambient, inventory)
            return
        point = points[i]
        depth = 0
        while True:
            cost = _staircase_cost(point, depth, ambient)
            if cost > remaining:
                break
            extra = [(point, depth)] if depth else []
            yield from assign(i + 1, remaining - cost, chosen + extra)
            depth += 1

    yield from assign(0, target, [])


def supercuspidal_corpus(inventory: Inventory, max_ambient_dim: int) -> list[LDParameter]:
    """Cuspidal-shape parameters for every classical ambient up to a bound."""
    out: list[LDParameter] = []
    for dim in range(1, max_ambient_dim + 1):
        out.extend(supercuspidal_shapes(inventory, DualGroupDescriptor(Family.ORTHOGONAL, dim)))
        if dim % 2 == 0:
            out.extend(supercuspidal_shapes(inventory, DualGroupDescriptor(Family.SYMPLECTIC, dim)))
    return out


def discrete_parameters(inventory: Inventory, ambient: DualGroupDescriptor) -> list[LDParameter]:
    """All discrete parameters in ``ambient``: multiplicity-free sums of
    self-dual sign points tensored with SL2 factors of the ambient type."""
    conjugate = ambient.family is Family.UNITARY_L
    choices: list[LDSummand] = []
    for cls in sorted(inventory, key=lambda c: c.label):
        if not cls.is_self_dual:
            continue
        if cls.duality.type_at_plus.conjugate_flavour != conjugate:
            continue
        for f in (UnitMonomial.one(), UnitMonomial.minus_one()):
            point = orbit_point(cls, f)
            a = 1
            while cls.dim * a <= ambient.ambient_dim:
                if summand_type(point, a, ambient):
                    choices.append(LDSummand(point, a))
                a += 1

    out: list[LDParameter] = []

    def pick(i: int, remaining: int, chosen: list[LDSummand]) -> None:
        if remaining == 0 and chosen:
            out.append(build_ld_parameter(chosen, ambient, inventory))
        if i == len(choices) or remaining <= 0:
            return
        s = choices[i]
        if s.dim <= remaining:
            pick(i + 1, remaining - s.dim, chosen + [s])
        pick(i + 1, remaining, chosen)

    pick(0, ambient.ambient_dim, [])
    return out


def normed_parameter(phi: LDParameter, inventory: Inventory | None = None) -> LDParameter:
    """The associated normed Weil parameter: per class, the base point with
    the dimension-weighted orbit multiplicity, trivial on the SL2 side."""
    counts: dict[str, tuple[InertialPoint, int]] = {}
    for s in phi.summands:
        base = orbit_point(s.point.cls, UnitMonomial.one())
        label = s.point.cls.label
        prev = counts.get(label, (base, 0))[1]
        counts[label] = (base, prev + s.sl2_dim * s.multiplicity)
    summands = [LDSummand(point, 1, m) for point, m in counts.values()]
    return build_ld_parameter(summands, phi.ambient, inventory)


# ---------------------------------------------------------------------------
# serialization


def parameter_to_json_dict(phi: LDParameter) -> dict:
    return {
        "ambient": {"family": phi.ambient.family.value, "dim": phi.ambient.ambient_dim},
        "summands": [
            {
                "class": s.point.cls.label,
                "f": s.point.f.to_json_dict(),
                "a": s.sl2_dim,
                "mult": s.multiplicity,
            }
            for s in phi.summands
        ],
    }


def parameter_from_json_dict(data: Mapping, inventory: Inventory) -> LDParameter:
    ambient = DualGroupDescriptor(Family(data["ambient"]["family"]), int(data["ambient"]["dim"]))
    summands = [
        LDSummand(
            orbit_point(inventory[s["class"]], UnitMonomial.from_json_dict(s["f"])),
            int(s["a"]),
            int(s.get("mult", 1)),
        )
        for s in data["summands"]
    ]
    return build_ld_parameter(summands, ambient, inventory)
