"""Signed-permutation Weyl group combinatorics for even orthogonal groups.

Brute-force verification playground: the full group W of signed
permutations (with its index-2 subgroup W0 of even sign changes), relative
Weyl groups of standard Levis, stabilizers of orbit decorations, and the
semidirect decomposition of the latter into a reflection part and a
positivity-preserving complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "SignedPermutation",
    "LeviDescriptor",
    "RelativeWeyl",
    "OrbitStabilizers",
    "weyl_group",
    "relative_weyl",
    "orbit_stabilizers",
    "enumerate_levis",
    "enumerate_decorations",
    "verify_normalizer_equality",
    "verify_decorated_equality",
]

BRUTE_FORCE_CAP = 5


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """e_i |-> signs[i] * e_{perm[i]} on coordinates 1..n (0-indexed storage)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self*other) acts by other first
        perm = tuple(self.perm[p] for p in other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(perm)))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i in range(n):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return SignedPermutation(tuple(perm), tuple(signs))

    @property
    def is_even(self) -> bool:
        return self.signs.count(-1) % 2 == 0

    @staticmethod
    def identity(n: int) -> "SignedPermutation":
        return SignedPermutation(tuple(range(n)), (1,) * n)


def weyl_group(n: int, full: bool = True) -> list[SignedPermutation]:
    """All signed permutations of n letters; W0 when ``full`` is false."""
    if not 1 <= n <= BRUTE_FORCE_CAP:
        raise ValueError(f"brute force capped at n <= {BRUTE_FORCE_CAP}")
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            w = SignedPermutation(perm, signs)
            if full or w.is_even:
                out.append(w)
    return out


@dataclass(frozen=True)
class LeviDescriptor:
    """GL blocks (sizes, in coordinate order) followed by a classical tail.

    ``decorations`` optionally attaches to each block an orbit label and a
    self-duality flag; equal labels must sit on equal-size blocks and agree
    on the flag.
    """

    composition: tuple[int, ...]
    tail_rank: int
    decorations: Optional[tuple[tuple[str, bool], ...]] = None

    def __post_init__(self) -> None:
        if any(k < 1 for k in self.composition):
            raise ValueError("block sizes must be positive")
        if self.tail_rank < 0:
            raise ValueError("tail rank must be nonnegative")
        if self.decorations is not None:
            if len(self.decorations) != len(self.composition):
                raise ValueError("one decoration per block required")
            by_label: dict[str, tuple[int, bool]] = {}
            for k, (label, sd) in zip(self.composition, self.decorations):
                if label in by_label and by_label[label] != (k, sd):
                    raise ValueError(f"label {label!r} decorates inconsistent blocks")
                by_label[label] = (k, sd)

    @property
    def rank(self) -> int:
        return sum(self.composition) + self.tail_rank

    def blocks(self) -> list[range]:
        out = []
        start = 0
        for k in self.composition:
            out.append(range(start, start + k))
            start += k
        return out


def _block_move(w: SignedPermutation, levi: LeviDescriptor) -> Optional[SignedPermutation]:
    """Induced signed permutation of the block axes, or None if w does not
    normalize the Levi (blocks must map to equal-size blocks with uniform
    sign, tail coordinates to tail coordinates)."""
    n = levi.rank
    blocks = levi.blocks()
    tail = set(range(n - levi.tail_rank, n))
    start_of = {}
    for bi, blk in enumerate(blocks):
        for c in blk:
            start_of[c] = bi
    perm = [0] * len(blocks)
    signs = [1] * len(blocks)
    for c in tail:
        if w.perm[c] not in tail:
            return None
    for bi, blk in enumerate(blocks):
        images = [w.perm[c] for c in blk]
        blk_signs = {w.signs[c] for c in blk}
        targets = {start_of.get(c) for c in images}
        if None in targets or len(targets) != 1 or len(blk_signs) != 1:
            return None
        (bj,) = targets
        if len(blocks[bj]) != len(blk):
            return None
        perm[bi] = bj
        signs[bi] = blk_signs.pop()
    return SignedPermutation(tuple(perm), tuple(signs))


def _min_lift_parity(move: SignedPermutation, levi: LeviDescriptor) -> int:
    """Parity of the least number of sign changes among lifts of a move."""
    return sum(len(levi.blocks()[i]) for i, s in enumerate(move.signs) if s == -1) % 2


@dataclass(frozen=True)
class RelativeWeyl:
    cosets: tuple[SignedPermutation, ...]  # block moves = W^M cosets in N(M)
    even_cosets: tuple[SignedPermutation, ...]

    @property
    def equal(self) -> bool:
        return set(self.cosets) == set(self.even_cosets)


def relative_weyl(levi: LeviDescriptor, n: int) -> RelativeWeyl:
    """Normalizer cosets of a Levi, with their even-liftable part."""
    if levi.rank != n:
        raise ValueError("Levi rank does not match n")
    moves: set[SignedPermutation] = set()
    for w in weyl_group(n, full=True):
        move = _block_move(w, levi)
        if move is not None:
            moves.add(move)
    even = {
        m for m in moves if levi.tail_rank >= 1 or _min_lift_parity(m, levi) == 0
    }
    return RelativeWeyl(tuple(sorted(moves)), tuple(sorted(even)))


def _stabilizes_decorations(move: SignedPermutation, levi: LeviDescriptor) -> bool:
    assert levi.decorations is not None
    for i, (label, self_dual) in enumerate(levi.decorations):
        j = move.perm[i]
        if levi.decorations[j][0] != label:
            return False
        if move.signs[i] == -1 and not self_dual:
            return False
    return True


# -- block-axis root system (type B positive system) ------------------------


def _roots(r: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(r):
        v = [0] * r
        v[i] = 1
        out.append(tuple(v))
        for j in range(i + 1, r):
            for sj in (1, -1):
                v = [0] * r
                v[i], v[j] = 1, sj
                out.append(tuple(v))
    return out  # positive roots only


def _apply(move: SignedPermutation, root: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(root)
    for i, c in enumerate(root):
        if c:
            out[move.perm[i]] += c * move.signs[i]
    return tuple(out)


def _is_positive(root: Sequence[int]) -> bool:
    for c in root:
        if c:
            return c > 0
    return False


def _reflection(root: Sequence[int], r: int) -> SignedPermutation:
    support = [i for i, c in enumerate(root) if c]
    perm = list(range(r))
    signs = [1] * r
    if len(support) == 1:
        signs[support[0]] = -1
    else:
        i, j = support
        perm[i], perm[j] = j, i
        if root[i] == root[j]:  # e_i + e_j
            signs[i] = signs[j] = -1
    return SignedPermutation(tuple(perm), tuple(signs))


def _closure(generators: Iterable[SignedPermutation], r: int) -> set[SignedPermutation]:
    group = {SignedPermutation.identity(r)}
    frontier = set(generators)
    group |= frontier
    while frontier:
        new = set()
        for g in frontier:
            for h in list(group):
                for x in (g * h, h * g):
                    if x not in group:
                        new.add(x)
        group |= new
        frontier = new
    return group


@dataclass(frozen=True)
class OrbitStabilizers:
    group: tuple[SignedPermutation, ...]  # W(M, O) as block moves
    even_group: tuple[SignedPermutation, ...]  # W0(M, O)
    reflection_part: tuple[SignedPermutation, ...]  # W0_O
    complement: tuple[SignedPermutation, ...]  # R(O)
    even_complement: tuple[SignedPermutation, ...]  # R0(O)
    semidirect_ok: bool
    counterexample: Optional[SignedPermutation]

    @property
    def equal(self) -> bool:
        return set(self.group) == set(self.even_group)


def orbit_stabilizers(levi: LeviDescriptor, n: int) -> OrbitStabilizers:
    """Stabilizer of the decoration data, with its semidirect splitting."""
    if levi.decorations is None:
        raise ValueError("decorations required")
    rel = relative_weyl(levi, n)
    q = {m for m in rel.cosets if _stabilizes_decorations(m, levi)}
    q0 = {m for m in q if m in set(rel.even_cosets)}
    r = len(levi.composition)

    sigma_pos = []
    for root in _roots(r):
        s = _reflection(root, r)
        if s in q0:
            sigma_pos.append(root)
    w0_o = _closure((_reflection(root, r) for root in sigma_pos), r)

    complement = set()
    for m in q:
        if all(_is_positive(_apply(m, root)) and _apply(m, root) in set(sigma_pos) for root in sigma_pos):
            complement.add(m)
    even_complement = complement & q0

    ok = True
    bad: Optional[SignedPermutation] = None
    products: dict[SignedPermutation, int] = {}
    for x in w0_o:
        for rho in complement:
            p = x * rho
            products[p] = products.get(p, 0) + 1
    if set(products) != q or any(c != 1 for c in products.values()):
        ok = False
        bad = next(iter(set(products) ^ q), None)
    # normality of the reflection part
    if ok:
        for m in q:
            mi = m.inverse()
            for x in w0_o:
                if m * x * mi not in w0_o:
                    ok, bad = False, m
                    break
            if not ok:
                break
    # the even part factors through the even complement
    if ok:
        products0: dict[SignedPermutation, int] = {}
        for x in w0_o:
            for rho in even_complement:
                p = x * rho
                products0[p] = products0.get(p, 0) + 1
        if set(products0) != q0 or any(c != 1 for c in products0.values()):
            ok = False
            bad = next(iter(set(products0) ^ q0), None)

    return OrbitStabilizers(
        tuple(sorted(q)),
        tuple(sorted(q0)),
        tuple(sorted(w0_o)),
        tuple(sorted(complement)),
        tuple(sorted(even_complement)),
        ok,
        bad,
    )


# ---------------------------------------------------------------------------
# exhaustive verification harnesses


def enumerate_levis(n: int) -> list[LeviDescriptor]:
    out = []
    for tail in range(n + 1):
        rest = n - tail

        def comps(total: int) -> list[tuple[int, ...]]:
            if total == 0:
                return [()]
            result = []
            for first in range(1, total + 1):
                for more in comps(total - first):
                    result.append((first,) + more)
            return result

        for comp in comps(rest):
            if comp or tail:
                out.append(LeviDescriptor(comp, tail))
    return out


def enumerate_decorations(levi: LeviDescriptor, max_labels: int = 3) -> list[LeviDescriptor]:
    """All decoration assignments with up to ``max_labels`` labels, up to
    renaming; equal labels must sit on equal-size blocks."""
    r = len(levi.composition)
    if r == 0:
        return [LeviDescriptor(levi.composition, levi.tail_rank, ())]
    out = []
    seen = set()
    for labels in itertools.product(range(max_labels), repeat=r):
        # canonical by first occurrence
        remap: dict[int, int] = {}
        canon = []
        for l in labels:
            if l not in remap:
                remap[l] = len(remap)
            canon.append(remap[l])
        canon_t = tuple(canon)
        if canon_t != labels:
            continue
        sizes: dict[int, int] = {}
        consistent = True
        for k, l in zip(levi.composition, canon_t):
            if sizes.setdefault(l, k) != k:
                consistent = False
                break
        if not consistent:
            continue
        used = sorted(set(canon_t))
        for flags in itertools.product((False, True), repeat=len(used)):
            flag_of = dict(zip(used, flags))
            dec = tuple((f"o{l}", flag_of[l]) for l in canon_t)
            key = (canon_t, flags)
            if key in seen:
                continue
            seen.add(key)
            out.append(LeviDescriptor(levi.composition, levi.tail_rank, dec))
    return out


def verify_normalizer_equality(max_rank: int = 4) -> list[dict]:
    """Equality of the two relative Weyl groups holds exactly when the Levi
    has a tail or only even blocks."""
    cases = []
    for n in range(1, max_rank + 1):
        for levi in enumerate_levis(n):
            rel = relative_weyl(levi, n)
            predicted = levi.tail_rank >= 1 or all(k % 2 == 0 for k in levi.composition)
            cases.append(
                {
                    "n": n,
                    "composition": list(levi.composition),
                    "tail": levi.tail_rank,
                    "expected": predicted,
                    "actual": rel.equal,
                    "status": "pass" if predicted == rel.equal else "fail",
                }
            )
    return cases


def verify_decorated_equality(max_rank: int = 4, max_labels: int = 3) -> list[dict]:
    """Decorated version: equality fails exactly for tailless Levis carrying
    a self-dual orbit on an odd block; the semidirect splitting is also
    checked on every case."""
    cases = []
    for n in range(1, max_rank + 1):
        for levi in enumerate_levis(n):
            if not levi.composition:
                continue
            for dec in enumerate_decorations(levi, max_labels):
                st = orbit_stabilizers(dec, n)
                odd_self_dual = any(
                    k % 2 == 1 and sd for k, (_, sd) in zip(dec.composition, dec.decorations)
                )
                predicted = dec.tail_rank >= 1 or not odd_self_dual
                good = predicted == st.equal and st.semidirect_ok
                cases.append(
                    {
                        "n": n,
                        "composition": list(dec.composition),
                        "tail": dec.tail_rank,
                        "decorations": [[label, sd] for label, sd in dec.decorations],
                        "expected": predicted,
                        "actual": st.equal,
                        "semidirect": st.semidirect_ok,
                        "status": "pass" if good else "fail",
                    }
                )
    return cases
