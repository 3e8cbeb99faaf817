"""Enumeration of supercuspidal supports of a normed Weil parameter.

Starting from a normed parameter (every point at f = 1, trivial SL2 side),
we enumerate the admissible staircase-depth data ``S``, build the discrete
parameter ``phi^S`` carried by the classical tail of the Levi subgroup,
and form the cuspidal pairs (S, epsilon) together with an injectivity
report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .params import (
    LDParameter,
    LDSummand,
    SignCharacter,
    alternating_characters,
    build_ld_parameter,
    det_discrepancy,
    is_supercuspidal_shape,
)
from .weil import (
    DualGroupDescriptor,
    Family,
    InertialClass,
    InertialPoint,
    Inventory,
    UnitMonomial,
    is_of_type,
    orbit_point,
)

__all__ = [
    "SupportDatum",
    "LeviDescriptor",
    "CuspidalSupport",
    "orbit_multiplicity",
    "supports",
    "build_phi_S",
    "build_levi",
    "cuspidal_pairs",
    "injectivity_report",
    "support_to_json_dict",
]

import itertools


@dataclass(frozen=True)
class SupportDatum:
    """Per self-dual orbit, staircase depths (a_plus, a_minus)."""

    entries: tuple[tuple[str, tuple[int, int]], ...]

    @property
    def as_dict(self) -> dict[str, tuple[int, int]]:
        return dict(self.entries)

    def sort_key(self):
        return tuple((label, pair) for label, pair in self.entries)


@dataclass(frozen=True)
class LeviDescriptor:
    """GL block sizes with multiplicities, plus the classical tail."""

    gl_factors: tuple[tuple[int, int], ...]
    tail: DualGroupDescriptor
    tail_rank: int


@dataclass(frozen=True)
class CuspidalSupport:
    S: SupportDatum
    phi_S: LDParameter
    L_S: int
    l_S: int
    d_S: int
    levi: LeviDescriptor
    epsilon: SignCharacter

    @property
    def eps_Z(self) -> int:
        return self.epsilon.eps_Z


def _check_normed(phi0: LDParameter) -> None:
    for s in phi0.summands:
        if not s.point.f.is_one:
            raise ValueError("parameter is not normed (a point has f != 1)")
        if s.sl2_dim != 1:
            raise ValueError("parameter has a nontrivial SL2 side")


def orbit_multiplicity(cls: InertialClass, phi: LDParameter) -> int:
    """Number of copies of the orbit of ``cls`` on the Weil side of ``phi``."""
    return sum(
        s.sl2_dim * s.multiplicity for s in phi.summands if s.point.cls.label == cls.label
    )


def _kappa_prime(point: InertialPoint, ambient: DualGroupDescriptor) -> int:
    return 1 if is_of_type(point, ambient) else 0


def _staircase_cost(point: InertialPoint, depth: int, ambient: DualGroupDescriptor) -> int:
    kp = _kappa_prime(point, ambient)
    return depth * (depth + 1) - kp * depth


def _self_dual_classes(phi0: LDParameter) -> list[InertialClass]:
    seen: dict[str, InertialClass] = {}
    for s in phi0.summands:
        if s.point.cls.is_self_dual:
            seen.setdefault(s.point.cls.label, s.point.cls)
    return [seen[label] for label in sorted(seen)]


def supports(phi0: LDParameter) -> list[SupportDatum]:
    """All admissible depth data, ordered lexicographically.

    Per orbit the staircase costs must not exceed the orbit multiplicity
    and must match its parity.
    """
    _check_normed(phi0)
    ambient = phi0.ambient
    per_class: list[tuple[str, list[tuple[int, int]]]] = []
    for cls in _self_dual_classes(phi0):
        m = orbit_multiplicity(cls, phi0)
        plus = orbit_point(cls, UnitMonomial.one())
        minus = orbit_point(cls, UnitMonomial.minus_one())
        pairs = []
        a_plus = 0
        while _staircase_cost(plus, a_plus, ambient) <= m:
            a_minus = 0
            while True:
                cost = _staircase_cost(plus, a_plus, ambient) + _staircase_cost(
                    minus, a_minus, ambient
                )
                if cost > m:
                    break
                if cost % 2 == m % 2:
                    pairs.append((a_plus, a_minus))
                a_minus += 1
            a_plus += 1
        per_class.append((cls.label, sorted(pairs)))

    out = []
    labels = [label for label, _ in per_class]
    for combo in itertools.product(*(pairs for _, pairs in per_class)):
        out.append(SupportDatum(tuple(zip(labels, combo))))
    out.sort(key=SupportDatum.sort_key)
    return out


def _tail_rank(family: Family, L_S: int) -> int:
    if family is Family.UNITARY_L:
        return L_S
    if family is Family.ORTHOGONAL and L_S % 2 == 1:
        return (L_S - 1) // 2
    return L_S // 2


def build_phi_S(
    phi0: LDParameter, S: SupportDatum, inventory: Inventory | None = None
) -> tuple[LDParameter, int, int, int]:
    """The discrete tail parameter of a support, with (L_S, l_S, d_S)."""
    _check_normed(phi0)
    ambient = phi0.ambient
    classes = {cls.label: cls for cls in _self_dual_classes(phi0)}
    summands: list[LDSummand] = []
    for label, (a_plus, a_minus) in S.entries:
        cls = classes[label]
        m = orbit_multiplicity(cls, phi0)
        for point, depth in (
            (orbit_point(cls, UnitMonomial.one()), a_plus),
            (orbit_point(cls, UnitMonomial.minus_one()), a_minus),
        ):
            kp = _kappa_prime(point, ambient)
            for k in range(1, depth + 1):
                summands.append(LDSummand(point, 2 * k - kp))
        cost = _staircase_cost(orbit_point(cls, UnitMonomial.one()), a_plus, ambient)
        cost += _staircase_cost(orbit_point(cls, UnitMonomial.minus_one()), a_minus, ambient)
        if cost > m or cost % 2 != m % 2:
            raise ValueError(f"support violates the bound or parity at orbit {label!r}")

    L_S = sum(s.dim for s in summands)
    tail_ambient = DualGroupDescriptor(ambient.family, L_S, ambient.quasi_split_twist)
    phi_S = build_ld_parameter(summands, tail_ambient, inventory)
    l_S = _tail_rank(ambient.family, L_S)
    d_S = det_discrepancy(phi_S, phi0)
    return phi_S, L_S, l_S, d_S


def build_levi(
    phi0: LDParameter, S: SupportDatum, inventory: Inventory | None = None
) -> LeviDescriptor:
    """GL factors with multiplicities plus the classical tail descriptor."""
    phi_S, L_S, l_S, _ = build_phi_S(phi0, S, inventory)
    gl: list[tuple[int, int]] = []
    depths = S.as_dict
    for cls in _self_dual_classes(phi0):
        m = orbit_multiplicity(cls, phi0)
        a_plus, a_minus = depths[cls.label]
        m_pm = sum(
            s.sl2_dim * s.multiplicity
            for s in phi_S.summands
            if s.point.cls.label == cls.label
        )
        if (m - m_pm) % 2 != 0:
            raise ValueError(f"non-integral GL multiplicity at orbit {cls.label!r}")
        if m > m_pm:
            gl.append((cls.dim, (m - m_pm) // 2))
    seen_pairs = set()
    for s in phi0.summands:
        cls = s.point.cls
        if cls.is_self_dual:
            continue
        rep = min(cls.label, cls.duality.partner_label)
        if rep in seen_pairs:
            continue
        seen_pairs.add(rep)
        m = orbit_multiplicity(cls, phi0)
        gl.append((cls.dim, m))
    gl.sort()
    tail = DualGroupDescriptor(phi0.ambient.family, L_S, phi0.ambient.quasi_split_twist)
    return LeviDescriptor(tuple(gl), tail, l_S)


def _epsilons(phi_S: LDParameter) -> list[SignCharacter]:
    if not phi_S.summands:
        return [SignCharacter(())]
    assert is_supercuspidal_shape(phi_S)
    return alternating_characters(phi_S)


def cuspidal_pairs(
    phi0: LDParameter, inventory: Inventory | None = None
) -> list[CuspidalSupport]:
    """All pairs (S, epsilon) with epsilon alternating on the tail parameter."""
    out: list[CuspidalSupport] = []
    for S in supports(phi0):
        phi_S, L_S, l_S, d_S = build_phi_S(phi0, S, inventory)
        levi = build_levi(phi0, S, inventory)
        for eps in _epsilons(phi_S):
            out.append(CuspidalSupport(S, phi_S, L_S, l_S, d_S, levi, eps))
    return out


def injectivity_report(pairs: Sequence[CuspidalSupport]) -> dict:
    """Duplicate (levi, tail parameter, epsilon) keys, and degenerate flags.

    A pair is flagged when the tail rank vanishes while more than one
    alternating character survives: distinctness of those supports is left
    open rather than decided.
    """
    by_key: dict[tuple, list[int]] = {}
    eps_count: dict[tuple, int] = {}
    for i, p in enumerate(pairs):
        key = (p.levi, p.phi_S, p.epsilon)
        by_key.setdefault(key, []).append(i)
        skey = p.S.sort_key()
        eps_count[skey] = eps_count.get(skey, 0) + 1
    duplicates = [idx for idx in by_key.values() if len(idx) > 1]
    flagged = [
        i for i, p in enumerate(pairs) if p.l_S == 0 and eps_count[p.S.sort_key()] > 1
    ]
    return {
        "total": len(pairs),
        "duplicates": duplicates,
        "flagged": flagged,
        "injective_outside_flagged": not any(
            set(idx) - set(flagged) for idx in duplicates
        ),
    }


def support_to_json_dict(p: CuspidalSupport) -> dict:
    from .params import parameter_to_json_dict

    return {
        "S": {label: list(pair) for label, pair in p.S.entries},
        "phiS": parameter_to_json_dict(p.phi_S),
        "LS": p.L_S,
        "lS": p.l_S,
        "dS": "+" if p.d_S == 1 else "-",
        "levi": {
            "gl": [list(f) for f in p.levi.gl_factors],
            "tail": {"family": p.levi.tail.family.value, "dim": p.levi.tail.ambient_dim, "rank": p.levi.tail_rank},
        },
        "epsilon": {gen: v for gen, v in p.epsilon.values},
        "epsZ": p.eps_Z,
    }
