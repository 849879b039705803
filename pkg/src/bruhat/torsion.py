"""Torsion invariants of enhanced complexes.

``tau`` is the signed alternating product of Bruhat numbers, ``tau_prime``
replaces the permutation sign by the parity of overlapping pair segments, and
``milnor_torsion`` computes the classical torsion of the chain complex from
scratch (boundary bases, lifts and determinants) as an independent oracle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .complex import BData, FilteredComplex, HomologyEnhancement, betti, require_valid
from .errors import FieldMismatch, NotABasis
from .linalg import Matrix, det, rank
from .scalars import QQ, Field, PrimeField, SubgroupSpec, subgroup_member


@dataclass(frozen=True)
class SignedPermutation:
    rows: dict  # degree -> tuple of positions in arrangement order
    sign: int

    @property
    def inversions(self) -> int:
        return sum(_inversions(r) for r in self.rows.values())


@dataclass(frozen=True)
class TorsionValue:
    value: object
    field: Field
    convention: str = "inversions of L, H, U-by-partner rows"

    @property
    def abs(self):
        return tau_abs(self.value, self.field)

    def __str__(self):
        return self.field.format(self.value)


def _inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def _field(d: BData) -> Field:
    return d.field if d.field is not None else QQ


def perm_sigma(d: BData) -> SignedPermutation:
    """Per degree: lower points ascending, then homological ascending, then upper points by partner."""
    b = d.b
    hom = set(d.homological)
    rows = {}
    for k in sorted(set(d.degrees)):
        pos = [s for s in range(1, d.n + 1) if d.deg(s) == k]
        lows = [s for s in pos if s in d.lower]
        homs = [s for s in pos if s in hom]
        ups = sorted((s for s in pos if s in b), key=lambda s: b[s])
        rows[k] = tuple(lows + homs + ups)
    inv = sum(_inversions(r) for r in rows.values())
    return SignedPermutation(rows, -1 if inv % 2 else 1)


def bruhat_product(d: BData):
    """``prod lambda(s) ** (-1) ** deg(s)`` over upper points ``s``."""
    f = _field(d)
    out = f.one
    for s, _, v in d.pairs:
        out = out * v if d.deg(s) % 2 == 0 else out / v
    return out


def tau(d: BData) -> TorsionValue:
    f = _field(d)
    return TorsionValue(bruhat_product(d) * perm_sigma(d).sign, f)


def overlaps(d: BData) -> int:
    """Unordered pairs of pair segments that overlap without nesting."""
    segs = [(t, s) for s, t, _ in d.pairs]
    count = 0
    for i in range(len(segs)):
        a, b = segs[i]
        for j in range(i + 1, len(segs)):
            c, e = segs[j]
            if a < c < b < e or c < a < e < b:
                count += 1
    return count


def tau_prime(d: BData) -> TorsionValue:
    f = _field(d)
    sign = -1 if overlaps(d) % 2 else 1
    return TorsionValue(bruhat_product(d) * sign, f)


def tau_abs(x, field: Field):
    """Canonical representative of ``{x, -x}``: the absolute value, or the smaller residue."""
    if isinstance(field, PrimeField):
        v = field.coerce(x).value
        return field.coerce(min(v, field.p - v))
    return abs(x)


# ---------------------------------------------------------------- Milnor torsion

def _pick_lifts(D: Matrix, candidates: list[list], field) -> list[list]:
    """Greedily choose candidates whose images under ``D`` are independent and span the image."""
    target = rank(D)
    chosen, images = [], []
    for v in candidates:
        if len(chosen) == target:
            break
        img = D.apply(v)
        if not any(img):
            continue
        trial = images + [img]
        if rank(Matrix(field, [[w[i] for w in trial] for i in range(D.rows)], D.rows, len(trial))) == len(trial):
            chosen.append(v)
            images.append(img)
    return chosen


def chain_torsion(diffs: Mapping[int, Matrix], dims: Mapping[int, int],
                  cycles: Mapping[int, list], field: Field,
                  rng: Optional[random.Random] = None):
    """Torsion of a finite chain complex with the standard bases and given homology cycles.

    ``diffs[k]`` maps degree ``k`` to degree ``k-1`` (missing means zero),
    ``cycles[k]`` lists vectors in degree ``k`` whose classes are the
    homology basis.  With ``rng`` the lifts are taken from random
    combinations instead of standard basis vectors; the answer must not change.
    """
    degs = sorted(dims)

    def D(k):
        m = diffs.get(k)
        return m if m is not None else Matrix.zeros(field, dims.get(k - 1, 0), dims.get(k, 0))

    lifts = {}
    for k in degs:
        n = dims[k]
        if rng is None:
            cands = [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
        else:
            cands = [[field.coerce(rng.randint(-3, 3)) for _ in range(n)] for _ in range(3 * n + 3)]
            cands += [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
        lifts[k] = _pick_lifts(D(k), cands, field)

    total = field.one
    for k in degs:
        n = dims[k]
        above = [D(k + 1).apply(v) for v in lifts.get(k + 1, [])]
        hk = [list(field.coerce(x) for x in z) for z in cycles.get(k, [])]
        basis = above + hk + lifts[k]
        if len(basis) != n:
            raise NotABasis(f"degree {k}: boundaries, homology and lifts give {len(basis)} "
                            f"vectors for a {n}-dimensional space")
        m = Matrix(field, [[v[i] for v in basis] for i in range(n)], n, n)
        dk = det(m)
        if not dk:
            raise NotABasis(f"homology classes in degree {k} are not a basis")
        total = total / dk if k % 2 == 0 else total * dk
    return total


def milnor_torsion(c: FilteredComplex, h: HomologyEnhancement,
                   rng: Optional[random.Random] = None) -> TorsionValue:
    """Torsion of ``c`` in its given basis, with homology basis given by the cycles of ``h``."""
    require_valid(c)
    f = c.field
    dims = {k: len(c.positions(k)) for k in c.degree_range}
    diffs = {k: c.boundary_matrix(k, f) for k in c.degree_range}
    cycles = {}
    for k in c.degree_range:
        pos = c.positions(k)
        cycles[k] = [[v[s - 1] for s in pos] for _, v in h.in_degree(k)]
        for z in cycles[k]:
            if any(diffs[k].apply([f.coerce(x) for x in z])):
                raise NotABasis(f"a listed homology vector in degree {k} is not a cycle")
    bet = betti(c)
    for k in c.degree_range:
        if len(cycles[k]) != bet[k]:
            raise NotABasis(f"degree {k}: {len(cycles[k])} classes given, homology has rank {bet[k]}")
    return TorsionValue(chain_torsion(diffs, dims, cycles, f, rng), f, "milnor")


def bdata_equal_mod_subgroup(d1: BData, d2: BData, g: SubgroupSpec) -> bool:
    """Same pairing and every ratio of Bruhat numbers lies in the subgroup."""
    f1, f2 = _field(d1), _field(d2)
    if f1 != f2:
        raise FieldMismatch(f"B-data over {f1} and {f2}")
    if (d1.n, d1.degrees, d1.b) != (d2.n, d2.degrees, d2.b):
        return False
    l2 = d2.bruhat
    return all(subgroup_member(v / l2[s], g, f1) for s, _, v in d1.pairs)
