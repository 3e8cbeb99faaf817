"""Centralizer calculus in products of complex classical groups.

Everything is decided on canonical combinatorial forms — eigenvalue
multisets and partitions — with an exact rational matrix oracle on the
side.  The two descriptors H and H' of a semisimple element (differing at
eigenvalue -1 on orbits whose two sign points have different types) are
both computed, together with the modified centralizer C' and component
groups of (s, u) triples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .params import LDParameter, LDSummand, build_ld_parameter, normed_parameter, summand_type
from .weil import (
    DualGroupDescriptor,
    DualityType,
    Family,
    InertialClass,
    InertialPoint,
    Inventory,
    SelfDual,
    UnitMonomial,
    is_of_type,
    orbit_point,
)

__all__ = [
    "ClassicalGroupDescriptor",
    "ImageCentralizer",
    "SemisimpleClassDescriptor",
    "SCentralizerResult",
    "Triple",
    "TripleComponentGroup",
    "centralizer_of_image",
    "s_phi",
    "enumerate_s_classes",
    "centralizer_of_s",
    "c_prime",
    "parameter_to_triple",
    "triple_to_parameter",
    "component_group_of_triple",
    "realize_matrices",
    "triple_to_json_dict",
]


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class ClassicalGroupDescriptor:
    """Product of classical factors, each tagged by an eigenvalue block."""

    factors: tuple[tuple[str, int, str], ...]  # (family, size, block label)

    def sorted(self) -> "ClassicalGroupDescriptor":
        return ClassicalGroupDescriptor(tuple(sorted(self.factors)))


@dataclass(frozen=True)
class ImageCentralizer:
    """Centralizer of a parameter image, with the ambient GL companion."""

    descriptor: ClassicalGroupDescriptor
    gl_descriptor: ClassicalGroupDescriptor
    has_det_restriction: bool


def _orbit_rep_label(cls: InertialClass) -> str:
    if cls.is_self_dual:
        return cls.label
    return min(cls.label, cls.duality.partner_label)


def _canonical_value(x: UnitMonomial) -> UnitMonomial:
    return min(x, x.inverse())


def centralizer_of_image(phi: LDParameter) -> ImageCentralizer:
    """Factor-by-factor centralizer of the image, per distinct summand.

    Self-dual summands of the ambient type give an orthogonal factor,
    self-dual summands of the other type a symplectic one; a summand and
    its contragredient share one general-linear factor.
    """
    factors: list[tuple[str, int, str]] = []
    gl_factors: list[tuple[str, int, str]] = []
    seen: set[tuple] = set()
    for s in phi.summands:
        cls = s.point.cls
        self_dual_pt = s.point.is_self_dual_point
        if self_dual_pt:
            key = (cls.label, s.point.f, s.sl2_dim)
        else:
            key = (_orbit_rep_label(cls), _canonical_value(s.point.f), s.sl2_dim)
        if key in seen:
            continue
        seen.add(key)
        label = f"{key[0]}@{key[1]}:sp{s.sl2_dim}"
        m = s.multiplicity
        if self_dual_pt:
            fam = "O" if summand_type(s.point, s.sl2_dim, phi.ambient) else "Sp"
            factors.append((fam, m, label))
            gl_factors.append(("GL", m, label))
        else:
            factors.append(("GL", m, label))
            gl_factors.append(("GL", m, label))
            gl_factors.append(("GL", m, label + "*"))
    return ImageCentralizer(
        ClassicalGroupDescriptor(tuple(sorted(factors))),
        ClassicalGroupDescriptor(tuple(sorted(gl_factors))),
        has_det_restriction=phi.ambient.family is Family.ORTHOGONAL,
    )


@dataclass(frozen=True)
class SemisimpleClassDescriptor:
    """Per orbit block, an eigenvalue multiset (value, multiplicity)."""

    blocks: tuple[tuple[str, tuple[tuple[UnitMonomial, int], ...]], ...]

    def block(self, label: str) -> tuple[tuple[UnitMonomial, int], ...]:
        for lab, values in self.blocks:
            if lab == label:
                return values
        return ()

    @staticmethod
    def build(raw: Mapping[str, Iterable[tuple[UnitMonomial, int]]]) -> "SemisimpleClassDescriptor":
        blocks = []
        for label in sorted(raw):
            merged: dict[UnitMonomial, int] = {}
            for x, m in raw[label]:
                merged[x] = merged.get(x, 0) + m
            blocks.append((label, tuple(sorted(merged.items()))))
        return SemisimpleClassDescriptor(tuple(blocks))


def _orbit_blocks(phi0: LDParameter) -> list[tuple[str, InertialClass, int]]:
    """(block label, representative class, size) per orbit of a normed parameter."""
    out: dict[str, tuple[InertialClass, int]] = {}
    for s in phi0.summands:
        cls = s.point.cls
        label = _orbit_rep_label(cls)
        if cls.label != label:
            continue  # only the representative side of a dual pair
        rep, m = out.get(label, (cls, 0))
        out[label] = (rep, m + s.sl2_dim * s.multiplicity)
    return [(label, rep, m) for label, (rep, m) in sorted(out.items())]


def s_phi(phi: LDParameter) -> SemisimpleClassDescriptor:
    """The semisimple class collecting the f-values of a Weil parameter."""
    raw: dict[str, list[tuple[UnitMonomial, int]]] = {}
    for s in phi.summands:
        if s.sl2_dim != 1:
            raise ValueError("s_phi expects a parameter trivial on the SL2 side")
        cls = s.point.cls
        label = _orbit_rep_label(cls)
        if not cls.is_self_dual and cls.label != label:
            continue
        raw.setdefault(label, []).append((s.point.f, s.multiplicity))
    return SemisimpleClassDescriptor.build(raw)


def _sign_families(cls: InertialClass, ambient: DualGroupDescriptor) -> tuple[str, str]:
    plus = is_of_type(orbit_point(cls, UnitMonomial.one()), ambient)
    minus = is_of_type(orbit_point(cls, UnitMonomial.minus_one()), ambient)
    return ("O" if plus else "Sp", "O" if minus else "Sp")


@dataclass(frozen=True)
class SCentralizerResult:
    h: ClassicalGroupDescriptor
    h_prime: ClassicalGroupDescriptor
    mixed_blocks: tuple[str, ...]
    m_minus_one_mixed: int

    @property
    def agree(self) -> bool:
        return self.h == self.h_prime


def centralizer_of_s(phi0: LDParameter, s: SemisimpleClassDescriptor) -> SCentralizerResult:
    """Centralizer of a semisimple class inside the image centralizer.

    ``h`` places at eigenvalue -1 the family of the -1 point of each orbit
    (the centralizer of the twisted parameter's image); ``h_prime`` keeps
    the ambient factor's family there.  They can only differ on orbits
    whose two sign points have different types, and then exactly when -1
    occurs as an eigenvalue.
    """
    h: list[tuple[str, int, str]] = []
    hp: list[tuple[str, int, str]] = []
    mixed: list[str] = []
    m_minus_mixed = 0
    for label, cls, m in _orbit_blocks(phi0):
        values = dict(s.block(label))
        if sum(values.values()) != m:
            raise ValueError(f"eigenvalue multiplicities at block {label!r} do not sum to {m}")
        if not cls.is_self_dual:
            for x, mx in sorted(values.items()):
                h.append(("GL", mx, f"{label}@{x}"))
                hp.append(("GL", mx, f"{label}@{x}"))
            continue
        fam_plus, fam_minus = _sign_families(cls, phi0.ambient)
        if fam_plus != fam_minus:
            mixed.append(label)
            m_minus_mixed += values.get(UnitMonomial.minus_one(), 0)
        seen: set[UnitMonomial] = set()
        for x, mx in sorted(values.items()):
            if x in seen:
                continue
            if x.is_sign:
                fam_true = fam_plus if x.sign == 1 else fam_minus
                h.append((fam_true, mx, f"{label}@{x}"))
                hp.append((fam_plus, mx, f"{label}@{x}"))
                seen.add(x)
            else:
                inv = x.inverse()
                if values.get(inv, 0) != mx:
                    raise ValueError(
                        f"eigenvalues at block {label!r} are not closed under inversion"
                    )
                rep = _canonical_value(x)
                h.append(("GL", mx, f"{label}@{rep}"))
                hp.append(("GL", mx, f"{label}@{rep}"))
                seen.update({x, inv})
    return SCentralizerResult(
        ClassicalGroupDescriptor(tuple(sorted(h))),
        ClassicalGroupDescriptor(tuple(sorted(hp))),
        tuple(mixed),
        m_minus_mixed,
    )


def c_prime(phi0: LDParameter, s: SemisimpleClassDescriptor) -> ClassicalGroupDescriptor:
    """The modified centralizer: on mixed-type orbits the unitary-dual rule
    is substituted (orthogonal at 1, symplectic at -1, general linear
    elsewhere); all other orbits keep the plain centralizer factors."""
    base = centralizer_of_s(phi0, s)
    if not base.mixed_blocks:
        return base.h
    factors = []
    mixed = set(base.mixed_blocks)
    for fam, size, label in base.h.factors:
        block = label.split("@", 1)[0]
        if block in mixed:
            value = label.split("@", 1)[1]
            if value == "1":
                fam = "O"
            elif value == "-1":
                fam = "Sp"
            else:
                fam = "GL"
        factors.append((fam, size, label))
    return ClassicalGroupDescriptor(tuple(sorted(factors)))


PAIR_PALETTE = (
    UnitMonomial.of(0, Fraction(1, 2)),  # q**(1/2), paired with q**(-1/2)
    UnitMonomial.of(Fraction(1, 4), 0),  # i, paired with -i
)


def enumerate_s_classes(phi0: LDParameter, max_pair_mult: int = 2) -> list[SemisimpleClassDescriptor]:
    """Deterministic family of semisimple classes centralizing the image.

    Per orbit block the eigenvalue 1/-1 multiplicities and a few inverse
    pairs from a fixed palette are enumerated exhaustively.
    """
    blocks = _orbit_blocks(phi0)

    def block_choices(m: int) -> list[list[tuple[UnitMonomial, int]]]:
        out = []
        for p0 in range(0, min(max_pair_mult, m // 2) + 1):
            for p1 in range(0, min(max_pair_mult, (m - 2 * p0) // 2) + 1):
                rest = m - 2 * (p0 + p1)
                for m1 in range(rest + 1):
                    values: list[tuple[UnitMonomial, int]] = []
                    if m1:
                        values.append((UnitMonomial.one(), m1))
                    if rest - m1:
                        values.append((UnitMonomial.minus_one(), rest - m1))
                    for k, pk in ((0, p0), (1, p1)):
                        if pk:
                            values.append((PAIR_PALETTE[k], pk))
                            values.append((PAIR_PALETTE[k].inverse(), pk))
                    out.append(values)
        return out

    per_block = [block_choices(m) for _, _, m in blocks]
    out = []
    for combo in itertools.product(*per_block):
        out.append(
            SemisimpleClassDescriptor.build(
                {label: values for (label, _, _), values in zip(blocks, combo)}
            )
        )
    return out


# ---------------------------------------------------------------------------
# (s, u) triples


@dataclass(frozen=True)
class Triple:
    group: ClassicalGroupDescriptor
    s: SemisimpleClassDescriptor
    u_by_eigenblock: tuple[tuple[tuple[str, UnitMonomial], tuple[int, ...]], ...]
    sign_families: tuple[tuple[str, str, str], ...]  # (block, family at 1, family at -1)
    xi: tuple[tuple[str, int], ...] | None = None


def _partition_ok(parts: Sequence[int], family: str) -> bool:
    if family == "GL":
        return True
    bad_parity = 0 if family == "O" else 1  # parts of this parity need even multiplicity
    counts: dict[int, int] = {}
    for a in parts:
        counts[a] = counts.get(a, 0) + 1
    return all(c % 2 == 0 for a, c in counts.items() if a % 2 == bad_parity)


def parameter_to_triple(phi: LDParameter, phi0: LDParameter) -> Triple:
    """Collect eigenvalue ladders and Jordan parts of a parameter.

    Per summand ``point (x) sp(a)`` the semisimple part receives the ladder
    ``f*q**((a-1)/2 - j)`` and the unipotent part of the f-eigenblock a part
    ``a``; partition parities are validated against the block families.
    """
    blocks = {label: (cls, m) for label, cls, m in _orbit_blocks(phi0)}
    raw_s: dict[str, list[tuple[UnitMonomial, int]]] = {label: [] for label in blocks}
    raw_u: dict[tuple[str, UnitMonomial], list[int]] = {}
    for s in phi.summands:
        cls = s.point.cls
        label = _orbit_rep_label(cls)
        if label not in blocks:
            raise ValueError(f"summand orbit {label!r} does not occur in the base parameter")
        rep_side = cls.label == label
        a = s.sl2_dim
        if rep_side:
            for j in range(a):
                step = UnitMonomial.of(0, Fraction(a - 1, 2) - j)
                raw_s[label].append((s.point.f * step, s.multiplicity))
        x = s.point.f if rep_side else s.point.f.inverse()
        canonical = _canonical_value(x) if blocks[label][0].is_self_dual else x
        if (not blocks[label][0].is_self_dual and not rep_side) or (
            blocks[label][0].is_self_dual and x != canonical and not x.is_sign
        ):
            continue  # mirrored side of the canonical key
        raw_u.setdefault((label, canonical), []).extend([a] * s.multiplicity)

    for label, (cls, m) in blocks.items():
        total = sum(mult for _, mult in raw_s[label])
        if total != m:
            raise ValueError(f"block {label!r} has Weil multiplicity {total}, expected {m}")

    sign_families = []
    for label, (cls, m) in sorted(blocks.items()):
        if cls.is_self_dual:
            fam_plus, fam_minus = _sign_families(cls, phi0.ambient)
        else:
            fam_plus = fam_minus = "GL"
        sign_families.append((label, fam_plus, fam_minus))
        for (lab, x), parts in raw_u.items():
            if lab != label or not cls.is_self_dual:
                continue
            if x.is_sign:
                fam = fam_plus if x.sign == 1 else fam_minus
                if not _partition_ok(parts, fam):
                    raise ValueError(
                        f"partition parity violated at block {label!r}, eigenvalue {x}"
                    )

    u = tuple(
        (key, tuple(sorted(parts, reverse=True)))
        for key, parts in sorted(raw_u.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    )
    return Triple(
        centralizer_of_image(phi0).descriptor,
        SemisimpleClassDescriptor.build(raw_s),
        u,
        tuple(sign_families),
    )


def triple_to_parameter(t: Triple, phi0: LDParameter, inventory: Inventory | None = None) -> LDParameter:
    """Rebuild the parameter from Jordan data; the semisimple part must
    match the ladders implied by the unipotent part exactly."""
    classes = {label: cls for label, cls, _ in _orbit_blocks(phi0)}
    summands: list[LDSummand] = []
    for (label, x), parts in t.u_by_eigenblock:
        cls = classes[label]
        counts: dict[int, int] = {}
        for a in parts:
            counts[a] = counts.get(a, 0) + 1
        for a, mult in sorted(counts.items()):
            summands.append(LDSummand(orbit_point(cls, x), a, mult))
            if cls.is_self_dual:
                if not x.is_sign:
                    summands.append(LDSummand(orbit_point(cls, x.inverse()), a, mult))
            else:
                partner_label = cls.duality.partner_label
                if inventory is None:
                    raise ValueError("an inventory is required to rebuild dual-pair orbits")
                summands.append(LDSummand(orbit_point(inventory[partner_label], x.inverse()), a, mult))
    phi = build_ld_parameter(summands, phi0.ambient, inventory)
    rebuilt = parameter_to_triple(phi, phi0)
    if rebuilt.s != t.s:
        raise ValueError("semisimple part violates the q-scaling relation of the Jordan data")
    return phi


@dataclass(frozen=True)
class TripleComponentGroup:
    """Elementary abelian 2-group on eigenblock-partition generators."""

    generators: tuple[str, ...]
    det_signs: tuple[int, ...]

    @property
    def order(self) -> int:
        return 2 ** len(self.generators)

    @property
    def plus_order(self) -> int:
        """Order of the determinant-one subgroup."""
        if -1 in self.det_signs:
            return self.order // 2
        return self.order


def component_group_of_triple(t: Triple, classes: Mapping[str, InertialClass] | None = None) -> TripleComponentGroup:
    """One Z/2 per distinct part of the relevant parity in each O/Sp block.

    Orthogonal blocks contribute their distinct odd parts, symplectic
    blocks their distinct even parts; each generator carries the sign
    ``(-1)**(dim * part)`` used for the determinant-one restriction.
    """
    fam_by_block = {label: (fp, fm) for label, fp, fm in t.sign_families}
    gens: list[str] = []
    dets: list[int] = []
    for (label, x), parts in t.u_by_eigenblock:
        fam_plus, fam_minus = fam_by_block[label]
        if fam_plus == "GL" or not x.is_sign:
            continue
        fam = fam_plus if x.sign == 1 else fam_minus
        want_parity = 1 if fam == "O" else 0
        dim = classes[label].dim if classes else 1
        for a in sorted(set(parts)):
            if a % 2 == want_parity:
                gens.append(f"{label}@{x}:part{a}")
                dets.append((-1) ** (dim * a))
    return TripleComponentGroup(tuple(gens), tuple(dets))


# ---------------------------------------------------------------------------
# exact matrix oracle


Matrix = list[list[Fraction]]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t]:
                for j in range(m):
                    if b[t][j]:
                        out[i][j] += a[i][t] * b[t][j]
    return out


def _mat_pow(a: Matrix, e: int) -> Matrix:
    n = len(a)
    out: Matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    base = a
    while e:
        if e % 2:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        e //= 2
    return out


def _kron(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    out = [[Fraction(0)] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(len(a[0])):
            if a[i][j]:
                for k in range(nb):
                    for l in range(len(b[0])):
                        out[i * nb + k][j * nb + l] = a[i][j] * b[k][l]
    return out


def _transpose(a: Matrix) -> Matrix:
    return [list(row) for row in zip(*a)]


def _block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


def _exp_nilpotent(n_mat: Matrix) -> Matrix:
    n = len(n_mat)
    out: Matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    term: Matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n):
        term = _mat_mul(term, n_mat)
        if all(all(v == 0 for v in row) for row in term):
            break
        for i in range(n):
            for j in range(n):
                out[i][j] += term[i][j] / Fraction(math.factorial(k))
    return out


def _exact_sqrt(x: Fraction) -> Fraction:
    num, den = isqrt(x.numerator), isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} has no exact rational square root")
    return Fraction(num, den)


def _monomial_value(f: UnitMonomial, q: Fraction, sqrt_q: Fraction) -> Fraction:
    if not f.root in (Fraction(0), Fraction(1, 2)):
        raise ValueError("matrix oracle needs sign points")
    sign = 1 if f.root == 0 else -1
    e = f.q_exponent
    whole = e.numerator // e.denominator if e.denominator == 1 else None
    if whole is not None:
        return Fraction(sign) * q**whole
    half = 2 * e  # odd integer
    return Fraction(sign) * sqrt_q ** int(half)


def realize_matrices(phi: LDParameter, q_value: Fraction = Fraction(4)) -> tuple[Matrix, Matrix, Matrix]:
    """Exact block matrices (s, u, gram) witnessing the q-scaling relation.

    Asserts s u s^-1 = u**q and that both matrices preserve the block Gram
    form, whose symmetry type must match the ambient family (this is the
    independent check of the tensor type rule).
    """
    if phi.ambient.ambient_dim > 12:
        raise ValueError("matrix oracle capped at ambient dimension 12")
    if phi.ambient.family is Family.UNITARY_L:
        raise ValueError("matrix oracle covers the classical ambients only")
    q = Fraction(q_value)
    sqrt_q = _exact_sqrt(q)
    if not phi.summands:
        return [], [], []

    s_blocks: list[Matrix] = []
    u_blocks: list[Matrix] = []
    g_blocks: list[Matrix] = []
    for summand in phi.summands:
        cls = summand.point.cls
        a = summand.sl2_dim
        if not summand.point.is_self_dual_point:
            raise ValueError("matrix oracle needs self-dual sign points")
        if not isinstance(cls.duality, SelfDual):  # pragma: no cover - guarded above
            raise ValueError("self-dual class required")
        tag = (
            cls.duality.type_at_plus if summand.point.f.sign == 1 else cls.duality.type_at_minus
        )
        k = cls.dim * summand.multiplicity
        f_val = Fraction(summand.point.f.sign)
        ladder = [f_val * _monomial_value(UnitMonomial.of(0, Fraction(a - 1, 2) - j), q, sqrt_q) for j in range(a)]
        s_a = [[ladder[i] if i == j else Fraction(0) for j in range(a)] for i in range(a)]
        n_a = [[Fraction(int(j == i + 1)) for j in range(a)] for i in range(a)]
        u_a = _exp_nilpotent(n_a)
        g_a = [[Fraction(0)] * a for _ in range(a)]
        for i in range(a):
            g_a[i][a - 1 - i] = Fraction((-1) ** i)
        if tag is DualityType.ORTHOGONAL:
            g_k = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        elif tag is DualityType.SYMPLECTIC:
            if k % 2 != 0:
                raise ValueError("symplectic representation dimension must be even")
            g_k = [[Fraction(0)] * k for _ in range(k)]
            for i in range(k):
                g_k[i][k - 1 - i] = Fraction(1 if i < k // 2 else -1)
        else:  # pragma: no cover - unitary ambients rejected earlier
            raise ValueError("conjugate-dual tags have no classical Gram form")
        ident_k = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        s_blocks.append(_kron(s_a, ident_k))
        u_blocks.append(_kron(u_a, ident_k))
        g_blocks.append(_kron(g_a, g_k))

    s_mat = _block_diag(s_blocks)
    u_mat = _block_diag(u_blocks)
    g_mat = _block_diag(g_blocks)

    if q.denominator == 1:
        q_int = q.numerator
    else:  # pragma: no cover - integral q in practice
        raise ValueError("q must be a positive integer for the power check")
    s_inv = [[Fraction(0)] * len(s_mat) for _ in range(len(s_mat))]
    for i in range(len(s_mat)):
        s_inv[i][i] = 1 / s_mat[i][i]
    left = _mat_mul(_mat_mul(s_mat, u_mat), s_inv)
    right = _mat_pow(u_mat, q_int)
    assert left == right, "q-scaling relation fails"

    for m in (s_mat, u_mat):
        assert _mat_mul(_mat_mul(_transpose(m), g_mat), m) == g_mat, "Gram form not preserved"

    gt = _transpose(g_mat)
    if phi.ambient.family is Family.ORTHOGONAL:
        assert gt == g_mat, "expected a symmetric form"
    else:
        assert gt == [[-v for v in row] for row in g_mat], "expected an alternating form"
    return s_mat, u_mat, g_mat


# ---------------------------------------------------------------------------
# serialization


def triple_to_json_dict(t: Triple) -> dict:
    return {
        "group": [list(f) for f in t.group.factors],
        "eigenvalues": [
            {"block": label, "values": [{"value": x.to_json_dict(), "mult": m} for x, m in values]}
            for label, values in t.s.blocks
        ],
        "partitions": {
            f"{label}@{x}": list(parts) for (label, x), parts in t.u_by_eigenblock
        },
        "xi": None if t.xi is None else {g: v for g, v in t.xi},
    }
