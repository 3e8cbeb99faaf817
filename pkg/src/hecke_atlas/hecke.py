"""Affine Hecke algebra descriptors attached to supercuspidal supports.

Per orbit of a normed parameter, a support determines a factor of an
extended affine Hecke algebra: a general-linear or classical root datum
together with exact q-power parameters (stored as half-integer exponent
multiples of the orbit torsion).  The explicit rank-by-rank tables for the
four unit settings are synthesized independently, with their sign buckets
and multiplicities, so the two roads can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .params import LDParameter, LDSummand, build_ld_parameter
from .support import (
    SupportDatum,
    build_phi_S,
    cuspidal_pairs,
    orbit_multiplicity,
    supports,
)
from .weil import (
    DualGroupDescriptor,
    DualityType,
    Family,
    InertialClass,
    Inventory,
    SelfDual,
    UnitMonomial,
    is_of_type,
    make_inertial_class,
    orbit_point,
)

__all__ = [
    "HeckeFactor",
    "HeckeDescriptor",
    "SpecialRow",
    "hecke_factor",
    "hecke_descriptor",
    "sp_normalization",
    "specialize",
    "epsilon_multiplicity",
    "derived_multiplicity",
    "derived_rows",
    "unit_setting",
    "unipotent_reduction",
    "factor_to_json_dict",
]

UNIT_KINDS = ("so_odd", "sp", "o_even", "unitary")


@dataclass(frozen=True, order=True)
class HeckeFactor:
    """One factor: root datum, optional Z/2 extension, exact parameters.

    Exponents are Fractions; an equal-parameter factor has all three equal.
    """

    family: str  # "GL" | "SO" | "Sp"
    size: int
    extended: bool
    t: int
    internal: Fraction
    end_long: Fraction
    end_short: Fraction

    @property
    def is_equal_parameter(self) -> bool:
        return self.internal == self.end_long == self.end_short


@dataclass(frozen=True)
class HeckeDescriptor:
    factors: tuple[tuple[str, HeckeFactor], ...]


def _equal(family: str, size: int, t: int, extended: bool = False) -> HeckeFactor:
    e = Fraction(t)
    return HeckeFactor(family, size, extended, t, e, e, e)


def _depth_cost(depth: int, of_type: bool) -> int:
    return depth * depth if of_type else depth * (depth + 1)


def hecke_factor(phi0: LDParameter, S: SupportDatum, orbit_label: str) -> HeckeFactor:
    """The algebra factor contributed by one orbit for one support."""
    cls = next(s.point.cls for s in phi0.summands if s.point.cls.label == orbit_label)
    m = orbit_multiplicity(cls, phi0)
    t = cls.torsion
    if not cls.is_self_dual:
        return _equal("GL", m, t)

    a_plus, a_minus = S.as_dict[orbit_label]
    plus_type = is_of_type(orbit_point(cls, UnitMonomial.one()), phi0.ambient)
    minus_type = is_of_type(orbit_point(cls, UnitMonomial.minus_one()), phi0.ambient)
    if plus_type and minus_type and a_plus == 0 and a_minus == 0:
        return _equal("SO", m, t, extended=True)

    kappa_plus = 0 if plus_type else 1
    kappa_minus = 0 if minus_type else 1
    m_pm = _depth_cost(a_plus, plus_type) + _depth_cost(a_minus, minus_type)
    size = m - m_pm + 1
    if size % 2 != 1:
        raise ValueError("odd-rank invariant violated in the unequal-parameter case")
    long = Fraction(t) * (a_plus + a_minus + Fraction(kappa_plus + kappa_minus, 2))
    short = Fraction(t) * abs(a_plus - a_minus + Fraction(kappa_plus - kappa_minus, 2))
    return HeckeFactor("SO", size, False, t, Fraction(t), long, short)


def hecke_descriptor(phi0: LDParameter, S: SupportDatum) -> HeckeDescriptor:
    """One factor per orbit of the parameter (dual pairs count once)."""
    factors = []
    seen: set[str] = set()
    for s in phi0.summands:
        cls = s.point.cls
        label = cls.label
        if not cls.is_self_dual:
            label = min(label, cls.duality.partner_label)
        if label in seen:
            continue
        seen.add(label)
        factors.append((label, hecke_factor(phi0, S, label if cls.is_self_dual else label)))
    factors.sort(key=lambda kv: kv[0])
    return HeckeDescriptor(tuple(factors))


def sp_normalization(f: HeckeFactor) -> HeckeFactor:
    """Rewrite the zero-depth unequal-parameter factor on its Sp root datum.

    That factor has odd orthogonal type with end exponents (t, 0); the
    equivalent datum is Sp of one less rank with equal parameters.  All
    other factors pass through unchanged.
    """
    if (
        f.family == "SO"
        and not f.extended
        and f.end_short == 0
        and f.end_long == f.internal == Fraction(f.t)
    ):
        return _equal("Sp", f.size - 1, f.t)
    return f


# ---------------------------------------------------------------------------
# explicit rank-by-rank tables


@dataclass(frozen=True)
class SpecialRow:
    pair: tuple[int, int]
    factor: HeckeFactor
    bucket: int  # +1 / -1 sign bucket, 0 when the table is unbucketed
    multiplicity: int


def _consecutive_products(bound: int) -> list[tuple[int, int]]:
    """(a, a(a+1)) with a(a+1) <= bound."""
    out = []
    a = 0
    while a * (a + 1) <= bound:
        out.append((a, a * (a + 1)))
        a += 1
    return out


def _squares(bound: int) -> list[tuple[int, int]]:
    out = []
    a = 0
    while a * a <= bound:
        out.append((a, a * a))
        a += 1
    return out


def epsilon_multiplicity(d_plus: int, d_minus: int, sign: int) -> int:
    """Closed-form multiplicities for the square-indexed settings."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    for d in (d_plus, d_minus):
        if d < 0 or math.isqrt(d) ** 2 != d:
            raise ValueError("indices must be perfect squares")
    if sign == 1:
        if d_plus == 0 and d_minus == 0:
            return 1
        s = d_plus + d_minus
        if d_plus % 2 == 0 and s % 8 == 0 and d_plus * d_minus != 0:
            return 4
        if d_plus % 2 == 0 and s % 4 == 0 and s % 8 != 0:
            return 0
        return 2
    if d_plus == 0 and d_minus == 0:
        return 0
    plus = epsilon_multiplicity(d_plus, d_minus, 1)
    if d_plus * d_minus != 0:
        return 4 - plus
    return 2 - plus


def specialize(kind: str, rank: int) -> list[SpecialRow]:
    """Explicit table of one unit setting: pairs, factors, buckets, counts."""
    if kind not in UNIT_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if rank < 1:
        raise ValueError("rank must be >= 1")
    rows: list[SpecialRow] = []

    if kind == "so_odd":
        n = 2 * rank
        for a_plus, d_plus in _consecutive_products(n):
            for a_minus, d_minus in _consecutive_products(n - d_plus):
                s = d_plus + d_minus
                if s == 0:
                    factor = _equal("Sp", n, 1)
                else:
                    factor = HeckeFactor(
                        "SO",
                        n + 1 - s,
                        False,
                        1,
                        Fraction(1),
                        Fraction(a_plus + a_minus + 1),
                        Fraction(abs(a_plus - a_minus)),
                    )
                bucket = 1 if (s // 2) % 2 == 0 else -1
                rows.append(SpecialRow((d_plus, d_minus), factor, bucket, 1))

    elif kind in ("sp", "o_even"):
        n = 2 * rank + 1 if kind == "sp" else 2 * rank
        want_parity = n % 2
        for a_plus, d_plus in _squares(n):
            for a_minus, d_minus in _squares(n - d_plus):
                s = d_plus + d_minus
                if s % 2 != want_parity:
                    continue
                if kind == "o_even" and s == 0:
                    factor = _equal("SO", n, 1, extended=True)
                else:
                    size = n + 1 - s if s % 2 == 0 else n + 2 - s
                    factor = HeckeFactor(
                        "SO",
                        size,
                        False,
                        1,
                        Fraction(1),
                        Fraction(a_plus + a_minus),
                        Fraction(abs(a_plus - a_minus)),
                    )
                if kind == "sp":
                    rows.append(SpecialRow((d_plus, d_minus), factor, 0, 2))
                else:
                    for sign in (1, -1):
                        mult = epsilon_multiplicity(d_plus, d_minus, sign)
                        if mult:
                            rows.append(SpecialRow((d_plus, d_minus), factor, sign, mult))

    else:  # unitary, rank = m
        m = rank
        for a_plus, d_plus in _squares(m):
            if d_plus % 2 != m % 2:
                continue
            for a_minus, d_minus in _consecutive_products(m - d_plus):
                s = d_plus + d_minus
                # s has the parity of m, so this is SO of rank (m - s + 1) // 2
                # in both the odd and the even case
                size = m + 1 - s
                factor = HeckeFactor(
                    "SO",
                    size,
                    False,
                    1,
                    Fraction(1),
                    Fraction(a_plus + a_minus) + Fraction(1, 2),
                    abs(Fraction(a_plus - a_minus) - Fraction(1, 2)),
                )
                if m % 2 == 1:
                    for sign in (1, -1):
                        rows.append(SpecialRow((d_plus, d_minus), factor, sign, 1))
                else:
                    bucket = 1 if (d_plus // 2) % 2 == 0 else -1
                    rows.append(
                        SpecialRow((d_plus, d_minus), factor, bucket, 2 if d_plus else 1)
                    )

    rows.sort(key=lambda r: (r.pair, -r.bucket))
    return rows


# ---------------------------------------------------------------------------
# derived side: the unit settings built from first principles


def unit_setting(kind: str, rank: int) -> tuple[Inventory, LDParameter]:
    """Inventory and normed parameter of a unit (trivial-class) setting."""
    if kind not in UNIT_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if rank < 1:
        raise ValueError("rank must be >= 1")
    inv = Inventory()
    if kind == "unitary":
        m = rank
        if m % 2 == 0:
            duality = SelfDual(DualityType.CONJUGATE_SYMPLECTIC, DualityType.CONJUGATE_ORTHOGONAL)
        else:
            duality = SelfDual(DualityType.CONJUGATE_ORTHOGONAL, DualityType.CONJUGATE_SYMPLECTIC)
        ambient = DualGroupDescriptor(Family.UNITARY_L, m)
    else:
        duality = SelfDual(DualityType.ORTHOGONAL, DualityType.ORTHOGONAL)
        if kind == "so_odd":
            ambient = DualGroupDescriptor(Family.SYMPLECTIC, 2 * rank)
        elif kind == "sp":
            ambient = DualGroupDescriptor(Family.ORTHOGONAL, 2 * rank + 1)
        else:
            ambient = DualGroupDescriptor(Family.ORTHOGONAL, 2 * rank)
    cls = inv.add(make_inertial_class("1", 1, 1, duality, "1"))
    phi0 = build_ld_parameter(
        [LDSummand(orbit_point(cls, UnitMonomial.one()), 1, ambient.ambient_dim)],
        ambient,
        inv,
    )
    return inv, phi0


def _support_pair(phi0: LDParameter, S: SupportDatum) -> tuple[int, int]:
    cls = phi0.summands[0].point.cls
    a_plus, a_minus = S.as_dict[cls.label]
    plus_type = is_of_type(orbit_point(cls, UnitMonomial.one()), phi0.ambient)
    minus_type = is_of_type(orbit_point(cls, UnitMonomial.minus_one()), phi0.ambient)
    return _depth_cost(a_plus, plus_type), _depth_cost(a_minus, minus_type)


def derived_rows(kind: str, rank: int) -> list[tuple[tuple[int, int], HeckeFactor, int, int]]:
    """First-principles table: supports, normalized factors, sign buckets.

    Returns (pair, factor, eps_Z, count) with counts aggregated over the
    alternating characters of each support's tail parameter.
    """
    inv, phi0 = unit_setting(kind, rank)
    label = "1"
    counts: dict[tuple, int] = {}
    for p in cuspidal_pairs(phi0, inv):
        pair = _support_pair(phi0, p.S)
        factor = sp_normalization(hecke_factor(phi0, p.S, label))
        key = (pair, factor, p.eps_Z)
        counts[key] = counts.get(key, 0) + 1
    return sorted((pair, factor, sign, n) for (pair, factor, sign), n in counts.items())


def derived_multiplicity(kind: str, rank: int, d_plus: int, d_minus: int, sign: int) -> int:
    """Count of (S, epsilon) pairs hitting one table cell of a unit setting."""
    total = 0
    for pair, _factor, eps_Z, n in derived_rows(kind, rank):
        if pair == (d_plus, d_minus) and eps_Z == sign:
            total += n
    return total


# ---------------------------------------------------------------------------
# unipotent reduction


def unipotent_reduction(phi0: LDParameter) -> list[tuple[str, int, int]]:
    """Per orbit: the reductive group over the unramified extension.

    Returns (family tag, size, extension degree) triples: general linear
    for non-self-dual orbits, odd orthogonal / symplectic / even orthogonal
    for the pure self-dual cases split by the orbit multiplicity parity,
    and unramified quasi-split unitary in the mixed-type case.
    """
    out: list[tuple[str, int, int]] = []
    seen: set[str] = set()
    for s in phi0.summands:
        cls = s.point.cls
        label = cls.label if cls.is_self_dual else min(cls.label, cls.duality.partner_label)
        if label in seen:
            continue
        seen.add(label)
        m = orbit_multiplicity(cls, phi0)
        t = cls.torsion
        if not cls.is_self_dual:
            out.append(("GL", m, t))
            continue
        plus_type = is_of_type(orbit_point(cls, UnitMonomial.one()), phi0.ambient)
        minus_type = is_of_type(orbit_point(cls, UnitMonomial.minus_one()), phi0.ambient)
        if plus_type and minus_type:
            out.append(("Sp", m - 1, t) if m % 2 == 1 else ("O", m, t))
        elif not plus_type and not minus_type:
            out.append(("SO", m + 1, t))
        else:
            out.append(("U", m, t))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# serialization


def _expo_str(e: Fraction) -> str:
    e = Fraction(e)
    return f"{2 * e.numerator // e.denominator}/2"


def factor_to_json_dict(f: HeckeFactor) -> dict:
    return {
        "family": f.family,
        "size": f.size,
        "extended": f.extended,
        "t": f.t,
        "internal": _expo_str(f.internal),
        "endLong": _expo_str(f.end_long),
        "endShort": _expo_str(f.end_short),
    }
