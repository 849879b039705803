"""Filtered chain complexes with an ordered basis, and their B-data.

A complex is given by generators ``c_1..c_N`` listed in filtration order with
degrees, and a sparse boundary ``{(t, s): coeff}`` meaning that ``c_t``
appears in ``d(c_s)`` with that coefficient.  Every prefix ``c_1..c_s`` spans
a subcomplex, so ``t < s`` always.  Positions are 1-based.

The B-data of a complex is read off the rook forms of the per-degree
boundary matrices: a rook hit in row ``t`` and column ``s`` pairs the upper
point ``s`` with the lower point ``t`` and carries the Bruhat number.
Points in no pair are homological.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .enhanced_linear import RookMatrix, rook_reduce
from .errors import IndexOutOfRange, InvalidComplex, NotChainMap, ShapeMismatch
from .linalg import Matrix, rank, solve, unitriangular_inverse
from .scalars import QQ, Integers, Ring


@dataclass(frozen=True)
class FilteredComplex:
    ring: Ring
    degrees: tuple
    boundary: Mapping  # {(t, s): coeff}, 1-based, zero entries dropped
    names: Optional[tuple] = dc_field(default=None, compare=False)

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        bd = {}
        for (t, s), v in dict(self.boundary).items():
            v = self.ring.coerce(v)
            if v:
                bd[(int(t), int(s))] = v
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "boundary", bd)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(degrees):
                raise InvalidComplex("one name per generator is required")
            object.__setattr__(self, "names", names)

    __hash__ = None  # the boundary is a dict

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def field(self) -> Ring:
        """The coefficient field used for field-level invariants (Z complexes use Q)."""
        return QQ if isinstance(self.ring, Integers) else self.ring

    def name(self, s: int) -> str:
        return self.names[s - 1] if self.names else f"c{s}"

    def deg(self, s: int) -> int:
        return self.degrees[s - 1]

    @cached_property
    def _positions(self) -> dict:
        out: dict[int, list[int]] = {}
        for s, d in enumerate(self.degrees, start=1):
            out.setdefault(d, []).append(s)
        return out

    def positions(self, k: int) -> list[int]:
        """Positions of the degree-``k`` generators, in filtration order."""
        return list(self._positions.get(k, ()))

    @property
    def degree_range(self) -> list[int]:
        return sorted(self._positions)

    def boundary_matrix(self, k: int, ring: Optional[Ring] = None) -> Matrix:
        """Matrix of ``d: C_k -> C_{k-1}`` in the filtration-ordered bases."""
        ring = ring or self.ring
        rows, cols = self.positions(k - 1), self.positions(k)
        ri = {t: i for i, t in enumerate(rows)}
        ci = {s: j for j, s in enumerate(cols)}
        m = Matrix.zeros(ring, len(rows), len(cols))
        for (t, s), v in self.boundary.items():
            if s in ci and t in ri:
                m.data[ri[t]][ci[s]] = ring.coerce(v)
        return m

    def full_matrix(self, ring: Optional[Ring] = None) -> Matrix:
        ring = ring or self.ring
        m = Matrix.zeros(ring, self.n, self.n)
        for (t, s), v in self.boundary.items():
            m.data[t - 1][s - 1] = ring.coerce(v)
        return m

    @classmethod
    def from_full_matrix(cls, ring: Ring, degrees: Sequence[int], m: Matrix,
                         names: Optional[tuple] = None) -> "FilteredComplex":
        bd = {(i + 1, j + 1): m.data[i][j] for i in range(m.rows) for j in range(m.cols)
              if m.data[i][j]}
        return cls(ring, tuple(degrees), bd, names)

    def over(self, ring: Ring) -> "FilteredComplex":
        """The same complex with coefficients read in another ring (e.g. Z -> F_p)."""
        return FilteredComplex(ring, self.degrees, {k: ring.coerce(v) for k, v in self.boundary.items()},
                               self.names)

    def coeff(self, t: int, s: int):
        return self.boundary.get((t, s), self.ring.zero)


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    where: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def validate(c: FilteredComplex) -> ValidationReport:
    """Check indices, degrees, triangularity and ``d^2 = 0``; name the first failure."""
    n = c.n
    if any(d < 0 for d in c.degrees):
        s = next(i for i, d in enumerate(c.degrees, 1) if d < 0)
        return ValidationReport(False, f"negative degree at {c.name(s)}", (s,))
    for (t, s) in sorted(c.boundary, key=lambda ts: (ts[1], ts[0])):
        if not (1 <= t <= n and 1 <= s <= n):
            return ValidationReport(False, f"boundary entry ({t}, {s}) out of range 1..{n}", (t, s))
        if t >= s:
            return ValidationReport(
                False, f"{c.name(s)} has {c.name(t)} in its boundary but does not come after it", (t, s))
        if c.deg(t) != c.deg(s) - 1:
            return ValidationReport(
                False, f"degree mismatch: d({c.name(s)}) of degree {c.deg(s)} hits "
                       f"{c.name(t)} of degree {c.deg(t)}", (t, s))
    # d^2 = 0, entry by entry so the first failing pair can be named
    cols: dict[int, dict[int, object]] = {}
    for (t, s), v in c.boundary.items():
        cols.setdefault(s, {})[t] = v
    for s in sorted(cols):
        acc: dict[int, object] = {}
        for t, v in cols[s].items():
            for u, w in cols.get(t, {}).items():
                acc[u] = acc.get(u, c.ring.zero) + v * w
        bad = sorted(u for u, x in acc.items() if x)
        if bad:
            u = bad[0]
            return ValidationReport(
                False, f"d^2 != 0: coefficient of {c.name(u)} in dd({c.name(s)}) is "
                       f"{c.ring.format(acc[u])}", (u, s))
    return ValidationReport(True)


def require_valid(c: FilteredComplex) -> None:
    rep = validate(c)
    if not rep.ok:
        raise InvalidComplex(rep.reason)


# ---------------------------------------------------------------- B-data

@dataclass(frozen=True)
class BData:
    n: int
    degrees: tuple
    pairs: tuple  # ((upper, lower, bruhat), ...) sorted by upper
    field: Optional[Ring] = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "pairs", tuple(sorted((int(s), int(t), v) for s, t, v in self.pairs)))

    @property
    def upper(self) -> frozenset:
        return frozenset(s for s, _, _ in self.pairs)

    @property
    def lower(self) -> frozenset:
        return frozenset(t for _, t, _ in self.pairs)

    @property
    def homological(self) -> tuple:
        paired = self.upper | self.lower
        return tuple(s for s in range(1, self.n + 1) if s not in paired)

    @property
    def b(self) -> dict:
        return {s: t for s, t, _ in self.pairs}

    @property
    def bruhat(self) -> dict:
        return {s: v for s, _, v in self.pairs}

    def deg(self, s: int) -> int:
        return self.degrees[s - 1]

    def check(self) -> None:
        """Raise if the pairing is not a valid B-data structure."""
        seen = set()
        for s, t, v in self.pairs:
            if not (1 <= t < s <= self.n):
                raise InvalidComplex(f"pair ({s}, {t}) is not of the form lower < upper")
            if self.deg(t) != self.deg(s) - 1:
                raise InvalidComplex(f"pair ({s}, {t}) does not drop degree by one")
            if not v:
                raise InvalidComplex(f"pair ({s}, {t}) has zero Bruhat number")
            if s in seen or t in seen:
                raise InvalidComplex(f"point reused in pair ({s}, {t})")
            seen.update((s, t))

    def homological_in_degree(self, k: int) -> list[int]:
        return [s for s in self.homological if self.deg(s) == k]


def bdata(c: FilteredComplex) -> BData:
    """B-data from the rook forms of the per-degree boundary matrices."""
    require_valid(c)
    f = c.field
    pairs = []
    for k in c.degree_range:
        rows, cols = c.positions(k - 1), c.positions(k)
        if not rows or not cols:
            continue
        rook, _ = rook_reduce(c.boundary_matrix(k, f))
        for i, j, v in rook.hits:
            pairs.append((cols[j - 1], rows[i - 1], v))
    return BData(c.n, c.degrees, tuple(pairs), f)


def rook_matrices(d: BData) -> dict[int, RookMatrix]:
    """Per-degree rook matrices of a B-data, rows and columns in filtration order."""
    out = {}
    degs = sorted(set(d.degrees))
    pos = {k: [s for s in range(1, d.n + 1) if d.deg(s) == k] for k in degs}
    for k in degs:
        rows = pos.get(k - 1, [])
        if not rows:
            continue
        ri = {t: i + 1 for i, t in enumerate(rows)}
        ci = {s: j + 1 for j, s in enumerate(pos[k])}
        hits = tuple((ri[t], ci[s], v) for s, t, v in d.pairs if d.deg(s) == k)
        out[k] = RookMatrix(len(rows), len(pos[k]), hits)
    return out


def complex_from_bdata(d: BData, ring: Ring) -> FilteredComplex:
    """The complex whose boundary is exactly the rook form of ``d``."""
    return FilteredComplex(ring, d.degrees, {(t, s): v for s, t, v in d.pairs})


# ---------------------------------------------------------------- basis changes

@dataclass(frozen=True)
class GradedUnitriangular:
    """Columns are the new basis vectors written in the old basis."""

    degrees: tuple
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if not m.is_upper_unitriangular() or m.rows != len(self.degrees):
            raise InvalidComplex("basis change must be square upper unitriangular")
        for i in range(m.rows):
            for j in range(i + 1, m.cols):
                if m.data[i][j] and self.degrees[i] != self.degrees[j]:
                    raise InvalidComplex(f"basis change mixes degrees at ({i + 1}, {j + 1})")


def change_basis(c: FilteredComplex, p: GradedUnitriangular) -> FilteredComplex:
    """The same complex written in the basis given by the columns of ``p``."""
    if tuple(p.degrees) != c.degrees:
        raise ShapeMismatch("basis change and complex have different gradings")
    P = p.matrix if p.matrix.field == c.ring else p.matrix.over(c.ring)
    D = c.full_matrix()
    new = unitriangular_inverse(P) @ D @ P
    return FilteredComplex.from_full_matrix(c.ring, c.degrees, new, c.names)


def _column_reduce(m: Matrix) -> tuple[Matrix, Matrix, dict[int, int]]:
    """``m @ v = r`` with ``v`` unitriangular and the columns of ``r`` having distinct lows."""
    r = m.copy()
    f = m.field
    v = Matrix.identity(f, m.cols)
    R, V = r.data, v.data
    low_col: dict[int, int] = {}
    for j in range(m.cols):
        while True:
            lo = next((i for i in range(m.rows - 1, -1, -1) if R[i][j]), None)
            if lo is None or lo not in low_col:
                if lo is not None:
                    low_col[lo] = j
                break
            i = low_col[lo]
            c = -R[lo][j] / R[lo][i]
            for row in R:
                if row[i]:
                    row[j] = row[j] + c * row[i]
            for row in V:
                if row[i]:
                    row[j] = row[j] + c * row[i]
    return r, v, low_col


def barannikov_basis(c: FilteredComplex) -> tuple[FilteredComplex, GradedUnitriangular]:
    """A graded unitriangular change of basis after which every differential is a rook matrix.

    In each degree the upper and homological points take the columns of the
    unitriangular matrix reducing the outgoing differential; each lower point
    takes the reduced incoming boundary that has its lowest entry there,
    normalised to coefficient one.
    """
    require_valid(c)
    f = c.field
    n = c.n
    P = Matrix.zeros(f, n, n)
    reduced = {}
    for k in c.degree_range:
        reduced[k] = _column_reduce(c.boundary_matrix(k, f))
    for k in c.degree_range:
        pos = c.positions(k)
        _, V, _ = reduced[k]
        lowered = {}
        if k + 1 in reduced:
            R1, _, low1 = reduced[k + 1]
            for lo, j in low1.items():
                lowered[lo] = [x / R1.data[lo][j] for x in R1.column(j)]
        for a, s in enumerate(pos):
            col = lowered[a] if a in lowered else V.column(a)
            for b, t in enumerate(pos):
                P.data[t - 1][s - 1] = col[b]
    gu = GradedUnitriangular(c.degrees, P)
    new = FilteredComplex.from_full_matrix(
        f, c.degrees, unitriangular_inverse(P) @ c.full_matrix(f) @ P, c.names)
    return new, gu


# ---------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyEnhancement:
    """Cycles whose classes form the enhancement basis of homology.

    ``cycles`` lists ``(s, degree, vector)`` by increasing ``s``; the vector is
    given in the full basis ``c_1..c_N``.
    """

    cycles: tuple

    def in_degree(self, k: int) -> list:
        return [(s, v) for s, d, v in self.cycles if d == k]


def homology_enhancement(c: FilteredComplex) -> HomologyEnhancement:
    new, p = barannikov_basis(c)
    d = bdata(new)
    return HomologyEnhancement(tuple((s, c.deg(s), tuple(p.matrix.column(s - 1)))
                                     for s in d.homological))


def betti(c: FilteredComplex, field: Optional[Ring] = None) -> dict[int, int]:
    """Betti numbers by plain ranks."""
    f = field or c.field
    out = {}
    for k in c.degree_range:
        nk = len(c.positions(k))
        out[k] = nk - rank(c.boundary_matrix(k, f)) - rank(c.boundary_matrix(k + 1, f))
    return out


def _local(vec: Sequence, positions: list[int]) -> list:
    return [vec[s - 1] for s in positions]


def induced_map_rook(a: FilteredComplex, b: FilteredComplex,
                     chain_map: Mapping[int, Matrix]) -> dict[int, RookMatrix]:
    """Rook forms of the maps induced on homology, in the two enhancement bases.

    ``chain_map[k]`` has shape ``(#b_k, #a_k)``; missing degrees are zero maps.
    """
    require_valid(a)
    require_valid(b)
    f = a.field
    degs = sorted(set(a.degree_range) | set(b.degree_range))

    def fmap(k):
        m = chain_map.get(k)
        shape = (len(b.positions(k)), len(a.positions(k)))
        if m is None:
            return Matrix.zeros(f, *shape)
        if m.shape != shape:
            raise ShapeMismatch(f"chain map in degree {k} has shape {m.shape}, expected {shape}")
        return m.over(f)

    for k in degs:
        lhs = fmap(k - 1) @ a.boundary_matrix(k, f)
        rhs = b.boundary_matrix(k, f) @ fmap(k)
        if lhs != rhs:
            raise NotChainMap(f"map does not commute with the boundary in degree {k}")

    ha, hb = homology_enhancement(a), homology_enhancement(b)
    out = {}
    for k in degs:
        za = [_local(v, a.positions(k)) for _, v in ha.in_degree(k)]
        zb = [_local(v, b.positions(k)) for _, v in hb.in_degree(k)]
        nb = len(b.positions(k))
        D = b.boundary_matrix(k + 1, f)
        gens = [list(col) for col in zb] + [D.column(j) for j in range(D.cols)]
        A = Matrix(f, [[g[i] for g in gens] for i in range(nb)], nb, len(gens))
        F = fmap(k)
        Y = Matrix.zeros(f, len(zb), len(za))
        for j, z in enumerate(za):
            x = solve(A, F.apply(z))
            if x is None:
                raise NotChainMap(f"image of a cycle is not a cycle in degree {k}")
            for i in range(len(zb)):
                Y.data[i][j] = x[i]
        out[k] = rook_reduce(Y)[0]
    return out


# ---------------------------------------------------------------- slicing and duality

def slice_complex(c: FilteredComplex, l: int, m: int) -> FilteredComplex:
    """The subquotient ``C^m / C^l``: generators ``l+1..m`` renumbered from 1."""
    if not (0 <= l <= m <= c.n):
        raise IndexOutOfRange(f"need 0 <= l <= m <= {c.n}, got ({l}, {m})")
    bd = {(t - l, s - l): v for (t, s), v in c.boundary.items() if l < t and s <= m}
    names = c.names[l:m] if c.names else None
    return FilteredComplex(c.ring, c.degrees[l:m], bd, names)


def slice_bdata(d: BData, l: int, m: int) -> BData:
    if not (0 <= l <= m <= d.n):
        raise IndexOutOfRange(f"need 0 <= l <= m <= {d.n}, got ({l}, {m})")
    pairs = tuple((s - l, t - l, v) for s, t, v in d.pairs if l < t and s <= m)
    return BData(m - l, d.degrees[l:m], pairs, d.field)


def poincare_dual(c: FilteredComplex, top_degree: int) -> FilteredComplex:
    """Reverse the order, complement the degrees and transpose the boundary."""
    require_valid(c)
    if c.degrees and top_degree < max(c.degrees):
        raise InvalidComplex("top degree is below the largest degree present")
    n = c.n
    degrees = tuple(top_degree - d for d in reversed(c.degrees))
    bd = {(n + 1 - s, n + 1 - t): v for (t, s), v in c.boundary.items()}
    names = tuple(reversed(c.names)) if c.names else None
    return FilteredComplex(c.ring, degrees, bd, names)


def upside_down(d: BData, top_degree: int) -> BData:
    """B-data turned upside down: positions reversed, degrees complemented, numbers kept."""
    n = d.n
    degrees = tuple(top_degree - x for x in reversed(d.degrees))
    return BData(n, degrees, tuple((n + 1 - t, n + 1 - s, v) for s, t, v in d.pairs), d.field)


def total_homology_dim(c: FilteredComplex) -> int:
    return sum(betti(c).values())


def rel_dims(c: FilteredComplex, s: int, t: int) -> tuple[int, int, int, int]:
    """Total homology dimensions of ``(C^{s-1},C^t), (C^s,C^{t-1}), (C^{s-1},C^{t-1}), (C^s,C^t)``."""
    if not (1 <= t < s <= c.n):
        raise IndexOutOfRange(f"need 1 <= t < s <= {c.n}, got s={s}, t={t}")
    return (total_homology_dim(slice_complex(c, t, s - 1)),
            total_homology_dim(slice_complex(c, t - 1, s)),
            total_homology_dim(slice_complex(c, t - 1, s - 1)),
            total_homology_dim(slice_complex(c, t, s)))


def pair_by_dims(dims: Sequence[int]) -> bool:
    a, b, x, y = dims
    return a == b == x - 1 == y - 1
