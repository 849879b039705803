"""Integer complexes: Smith normal form and torsion of slices.

For a complex over Z the rational Bruhat numbers are controlled by torsion:
on a pair ``(s, t)``, ``|lambda|`` is the ratio of the torsion orders of the
slices ``(t-1, s]`` and ``(t, s-1]``.  Short pairs (no pair of the same
degree nested inside) carry integer Bruhat numbers that can be read off the
boundary in any filtered basis.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complex import FilteredComplex, bdata, change_basis, require_valid, slice_complex
from .errors import IndexOutOfRange, InvalidComplex, InvariantViolation
from .gallery import random_graded_unitriangular
from .linalg import Matrix
from .scalars import ZZ, Integers


@dataclass(frozen=True)
class SNFResult:
    d: tuple
    u: Matrix
    v: Matrix


def smith_normal_form(a: Matrix) -> SNFResult:
    """``u @ a @ v == diag(d)`` with ``u``, ``v`` unimodular and ``d_1 | d_2 | ...``.

    The pivot is always an entry of least absolute value; after clearing its
    row and column, any entry it fails to divide is folded into the pivot row
    and the sweep restarts.
    """
    m, n = a.rows, a.cols
    A = [[int(x) for x in row] for row in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(nz)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    d = tuple(A[i][i] for i in range(min(m, n)))
    return SNFResult(d, Matrix(ZZ, U, m, m), Matrix(ZZ, V, n, n))


def torsion_of_homology(c: FilteredComplex) -> int:
    """Order of the torsion subgroup of the total homology."""
    order = 1
    for k in c.degree_range:
        for x in smith_normal_form(c.boundary_matrix(k + 1, ZZ)).d:
            if x > 1:
                order *= x
    return order


def _require_integral(c: FilteredComplex) -> None:
    if not isinstance(c.ring, Integers):
        raise InvalidComplex("an integer complex is required")
    require_valid(c)


def slice_torsion(c: FilteredComplex, l: int, m: int) -> int:
    """Torsion order of the homology of the slice ``(l, m]``, i.e. of ``(C^m, C^l)``."""
    return torsion_of_homology(slice_complex(c, l, m))


def torsion_order(c: FilteredComplex, s: int, t: int) -> int:
    """Torsion order of the homology of ``(C^s, C^{t-1})``."""
    if not (0 <= t - 1 <= s <= c.n):
        raise IndexOutOfRange(f"need 0 <= t-1 <= s <= {c.n}, got s={s}, t={t}")
    return slice_torsion(c, t - 1, s)


@dataclass(frozen=True)
class PairTorsion:
    upper: int
    lower: int
    bruhat: Fraction
    numerator: int
    denominator: int

    @property
    def ok(self) -> bool:
        return abs(self.bruhat) == Fraction(self.numerator, self.denominator)


def check_pair_torsion_formula(c: FilteredComplex) -> list[PairTorsion]:
    _require_integral(c)
    out = []
    for s, t, lam in bdata(c).pairs:
        out.append(PairTorsion(s, t, lam, slice_torsion(c, t - 1, s), slice_torsion(c, t, s - 1)))
    return out


def short_pairs(d) -> list[tuple]:
    """Pairs with no pair of the same degree nested strictly inside their segment."""
    out = []
    for s, t, v in d.pairs:
        nested = any(t < t2 < s2 < s and d.deg(s2) == d.deg(s) for s2, t2, _ in d.pairs)
        if not nested:
            out.append((s, t, v))
    return out


@dataclass(frozen=True)
class ShortPair:
    upper: int
    lower: int
    bruhat: Fraction
    raw: int
    stable: bool

    @property
    def ok(self) -> bool:
        return self.bruhat.denominator == 1 and self.raw == self.bruhat and self.stable


def short_pair_check(c: FilteredComplex, trials: int = 20,
                     rng: Optional[random.Random] = None) -> list[ShortPair]:
    """Short pairs, their raw boundary coefficients, and stability under integer basis changes."""
    _require_integral(c)
    rng = rng or random.Random(0)
    d = bdata(c)
    shorts = short_pairs(d)
    moved = [change_basis(c, random_graded_unitriangular(c.degrees, ZZ, rng)) for _ in range(trials)]
    out = []
    for s, t, lam in shorts:
        raw = c.coeff(t, s)
        stable = all(m.coeff(t, s) == raw for m in moved)
        out.append(ShortPair(s, t, lam, raw, stable))
    return out


def check_pm1_equivalence(c: FilteredComplex) -> tuple[bool, bool]:
    """(all slices torsion-free, all Bruhat numbers are +-1); these must agree."""
    _require_integral(c)
    n = c.n
    cond1 = all(slice_torsion(c, l, m) == 1 for l in range(n + 1) for m in range(l + 1, n + 1))
    cond2 = all(abs(v) == 1 for _, _, v in bdata(c).pairs)
    if cond1 != cond2:
        raise InvariantViolation(f"torsion-free slices = {cond1} but unit Bruhat numbers = {cond2}")
    return cond1, cond2

