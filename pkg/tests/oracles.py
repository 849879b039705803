"""Independent reference computations used by the tests.

Nothing here calls the rook reduction: orbits are enumerated by brute force,
B-data is read off the connecting homomorphism with plain linear solves, and
Betti numbers come from ranks.
"""
from __future__ import annotations

import itertools
from collections import deque

from bruhat.complex import BData, FilteredComplex
from bruhat.linalg import Matrix, nullspace, rank, solve


# ---------------------------------------------------------------- orbits over F_p

def all_matrices(p, r, c):
    for flat in itertools.product(range(p), repeat=r * c):
        yield tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r))


def is_rook_tuple(m):
    rows = [sum(1 for x in row if x) for row in m]
    cols = [sum(1 for row in m if row[j]) for j in range(len(m[0]) if m else 0)]
    return all(x <= 1 for x in rows + cols)


def orbit_neighbours(m, p):
    """Images of ``m`` under the generators ``row_i += row_j`` (i<j) and ``col_j += col_i`` (i<j)."""
    r = len(m)
    c = len(m[0]) if r else 0
    for i in range(r):
        for j in range(i + 1, r):
            rows = list(m)
            rows[i] = tuple((a + b) % p for a, b in zip(m[i], m[j]))
            yield tuple(rows)
    for i in range(c):
        for j in range(i + 1, c):
            yield tuple(tuple((row[j] + row[i]) % p if k == j else row[k] for k in range(c)) for row in m)


def orbits(p, r, c):
    """Partition all ``r x c`` matrices over F_p into two-sided unitriangular orbits."""
    seen = {}
    out = []
    for m in all_matrices(p, r, c):
        if m in seen:
            continue
        orbit = [m]
        seen[m] = len(out)
        queue = deque([m])
        while queue:
            x = queue.popleft()
            for y in orbit_neighbours(x, p):
                if y not in seen:
                    seen[y] = len(out)
                    orbit.append(y)
                    queue.append(y)
        out.append(orbit)
    return out


# ---------------------------------------------------------------- B-data via the connecting map

def _span_contains(field, vectors, target, n):
    if not vectors:
        return [] if not any(target) else None
    A = Matrix(field, [[v[i] for v in vectors] for i in range(n)], n, len(vectors))
    return solve(A, target)


def _cycles_upto(c: FilteredComplex, field, k: int, t: int):
    """Cycles of degree ``k`` supported on ``c_1..c_t`` (full-length vectors)."""
    pos = [s for s in c.positions(k) if s <= t]
    if not pos:
        return []
    rows = c.positions(k - 1)
    D = Matrix(field, [[c.coeff(r, s) for s in pos] for r in rows], len(rows), len(pos))
    out = []
    for z in nullspace(D):
        v = [field.zero] * c.n
        for s, x in zip(pos, z):
            v[s - 1] = x
        out.append(v)
    return out


def _boundaries_upto(c: FilteredComplex, field, k: int, m: int):
    """Boundaries of degree ``k`` coming from ``c_1..c_m``."""
    out = []
    for s in c.positions(k + 1):
        if s <= m:
            v = [field.zero] * c.n
            for t in c.positions(k):
                v[t - 1] = field.coerce(c.coeff(t, s))
            out.append(v)
    return out


def bdata_by_connecting_map(c: FilteredComplex) -> BData:
    """For each ``s``, look at the class of ``d(c_s)`` in the homology of ``C^{s-1}``.

    If it is zero, ``s`` is not upper.  Otherwise its height ``t`` is the least
    index with the class represented by a cycle supported on ``c_1..c_t``, and
    the Bruhat number is the coefficient of ``c_t`` in such a representative.
    """
    f = c.field
    n = c.n
    pairs = []
    for s in range(1, n + 1):
        k = c.deg(s)
        ds = [f.zero] * n
        for t in c.positions(k - 1):
            ds[t - 1] = f.coerce(c.coeff(t, s))
        if not any(ds):
            continue
        bnd = _boundaries_upto(c, f, k - 1, s - 1)
        if _span_contains(f, bnd, ds, n) is not None:
            continue
        for t in range(1, s):
            if c.deg(t) != k - 1:
                continue
            cyc = _cycles_upto(c, f, k - 1, t)
            x = _span_contains(f, cyc + bnd, ds, n)
            if x is not None:
                z = [f.zero] * n
                for coef, v in zip(x[: len(cyc)], cyc):
                    z = [a + coef * b for a, b in zip(z, v)]
                pairs.append((s, t, z[t - 1]))
                break
    return BData(n, c.degrees, tuple(pairs), f)


def betti_by_rank(c: FilteredComplex):
    f = c.field
    out = {}
    for k in c.degree_range:
        nk = len(c.positions(k))
        out[k] = nk - rank(c.boundary_matrix(k, f)) - rank(c.boundary_matrix(k + 1, f))
    return out


def inversion_count(seq):
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
