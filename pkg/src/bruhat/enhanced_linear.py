"""Coordinate theory of enhanced vector spaces.

An enhancement of a vector space is a full flag with a chosen nonzero vector
in each one-dimensional quotient.  In coordinates it is just an ordered basis
(the flag is spanned by prefixes, the units are the basis vectors modulo the
previous prefix).  Maps between enhanced spaces are matrices up to the action
``X -> A X B^-1`` of upper unitriangular ``A`` and ``B``, and every orbit
contains exactly one rook matrix (at most one nonzero entry per row and
column).  :func:`rook_reduce` finds it together with a witness pair.

Rook hits and heights are 1-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import InputError, RankDeficient, ShapeMismatch, ZeroVector
from .linalg import Matrix, rank, solve
from .scalars import QQ, Integers, Ring


@dataclass(frozen=True)
class RookMatrix:
    rows: int
    cols: int
    hits: tuple  # ((i, j, value), ...) sorted, 1-based

    def __post_init__(self):
        hits = tuple(sorted((int(i), int(j), v) for i, j, v in self.hits))
        rs = [h[0] for h in hits]
        cs = [h[1] for h in hits]
        if len(set(rs)) != len(rs) or len(set(cs)) != len(cs):
            raise InputError("two rook hits share a row or a column")
        for i, j, v in hits:
            if not (1 <= i <= self.rows and 1 <= j <= self.cols):
                raise InputError(f"rook hit ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            if not v:
                raise InputError("rook hits must be nonzero")
        object.__setattr__(self, "hits", hits)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "RookMatrix":
        hits = [(i + 1, j + 1, m.data[i][j]) for i in range(m.rows) for j in range(m.cols)
                if m.data[i][j]]
        return cls(m.rows, m.cols, tuple(hits))

    def to_matrix(self, field: Ring) -> Matrix:
        m = Matrix.zeros(field, self.rows, self.cols)
        for i, j, v in self.hits:
            m.data[i - 1][j - 1] = field.coerce(v)
        return m

    def row_of(self, j: int) -> Optional[int]:
        return next((i for i, jj, _ in self.hits if jj == j), None)

    def col_of(self, i: int) -> Optional[int]:
        return next((j for ii, j, _ in self.hits if ii == i), None)

    def value(self, i: int, j: int):
        return next((v for ii, jj, v in self.hits if ii == i and jj == j), None)


@dataclass(frozen=True)
class UnitriangularPair:
    """Witness of ``left @ m @ inverse(right) == rook``."""

    left: Matrix
    right: Matrix

    def __post_init__(self):
        if not (self.left.is_upper_unitriangular() and self.right.is_upper_unitriangular()):
            raise InputError("witness matrices must be upper unitriangular")


def _field_of(m: Matrix) -> Matrix:
    return m.over(QQ) if isinstance(m.field, Integers) else m


def rook_reduce(m: Matrix) -> tuple[RookMatrix, UnitriangularPair]:
    """The rook representative of the orbit of ``m`` and a witness pair.

    Columns are reduced left to right against the lowest nonzero entry of the
    earlier columns, exactly as in a persistence boundary reduction; then the
    entries above each pivot are cleared by row operations from the pivot row,
    taking pivots bottom-up so that every pivot row is already clean.
    """
    work = _field_of(m).copy()
    f = work.field
    M = work.data
    nr, nc = work.rows, work.cols
    B_inv = Matrix.identity(f, nc).data
    low_col: dict[int, int] = {}

    for j in range(nc):
        while True:
            r = next((i for i in range(nr - 1, -1, -1) if M[i][j]), None)
            if r is None or r not in low_col:
                if r is not None:
                    low_col[r] = j
                break
            i = low_col[r]
            c = -M[r][j] / M[r][i]
            for row in M:
                if row[i]:
                    row[j] = row[j] + c * row[i]
            # B <- B (I + c e_ij), so B^-1 <- (I - c e_ij) B^-1
            B_inv[i] = [a - c * b for a, b in zip(B_inv[i], B_inv[j])]

    A = Matrix.identity(f, nr).data
    for r in sorted(low_col, reverse=True):
        j = low_col[r]
        p = M[r][j]
        for i in range(r):
            if M[i][j]:
                c = -M[i][j] / p
                M[i] = [a + c * b for a, b in zip(M[i], M[r])]
                A[i] = [a + c * b for a, b in zip(A[i], A[r])]

    rook = RookMatrix(nr, nc, tuple((r + 1, j + 1, M[r][j]) for r, j in low_col.items()))
    pair = UnitriangularPair(Matrix._raw(f, A, nr, nr), Matrix._raw(f, B_inv, nc, nc))
    return rook, pair


def rook_form(m: Matrix) -> RookMatrix:
    return rook_reduce(m)[0]


def covered_mask(r: RookMatrix) -> list[list[bool]]:
    """``mask[i][j]`` (0-based) is True when entry (i+1, j+1) is covered by some hit."""
    mask = [[False] * r.cols for _ in range(r.rows)]
    for hi, hj, _ in r.hits:
        for i in range(1, r.rows + 1):
            for j in range(1, r.cols + 1):
                if (i < hi and j >= hj) or (i <= hi and j > hj):
                    mask[i - 1][j - 1] = True
    return mask


def cell_membership(m: Matrix, r: RookMatrix) -> bool:
    """Does ``m`` lie in the cell of ``r``: every uncovered entry agrees with ``r``?"""
    if m.shape != (r.rows, r.cols):
        raise ShapeMismatch(f"matrix is {m.shape}, rook matrix is {(r.rows, r.cols)}")
    mf = _field_of(m)
    target = r.to_matrix(mf.field)
    mask = covered_mask(r)
    for i in range(m.rows):
        for j in range(m.cols):
            if not mask[i][j] and mf.data[i][j] != target.data[i][j]:
                return False
    return True


@dataclass(frozen=True)
class Enhancement:
    """An enhancement given by an ordered basis (vectors listed as coordinate tuples).

    ``marks`` optionally records, for induced enhancements, the index in the
    other space at which each basis vector appeared.
    """

    field: Ring
    vectors: tuple
    marks: Optional[tuple] = dc_field(default=None)

    @classmethod
    def standard(cls, field: Ring, n: int) -> "Enhancement":
        return cls(field, tuple(tuple(field.one if i == j else field.zero for i in range(n))
                                for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        n = self.dim
        amb = len(self.vectors[0]) if n else 0
        return Matrix(self.field, [[self.vectors[j][i] for j in range(n)] for i in range(amb)],
                      amb, n)


def height_and_coeff(v: Sequence, enh: Enhancement) -> tuple[int, object]:
    """Smallest ``s`` with ``v`` in the span of the first ``s`` basis vectors, and the coefficient there."""
    f = enh.field
    v = [f.coerce(x) for x in v]
    if not any(v):
        raise ZeroVector("height of the zero vector is undefined")
    x = solve(enh.matrix(), v)
    if x is None:
        raise InputError("vector is not in the span of the enhancement basis")
    s = max(i for i, c in enumerate(x) if c)
    return s + 1, x[s]


def induced_enhancement(m: Matrix, enh: Enhancement, kind: str) -> Enhancement:
    """Transport an enhancement along a surjection (to the target) or an injection (to the source).

    Surjection: the images of the prefixes give the flag on the target; at
    every index where the image grows, the image of that basis vector is the
    new unit.  Injection: the preimages of the target prefixes give the flag on
    the source; where the preimage grows, the new unit is the vector mapping to
    the target unit modulo the previous prefix.
    """
    f = enh.field
    m = m.over(f) if m.field != f else m
    basis = [list(v) for v in enh.vectors]
    if kind.lower() == "surjection":
        if m.cols != enh.dim:
            raise ShapeMismatch("enhancement lives on the source of the surjection")
        if rank(m) != m.rows:
            raise RankDeficient("a surjection must have full row rank")
        images = [m.apply(v) for v in basis]
        out, marks, r = [], [], 0
        for s, w in enumerate(images):
            cand = out + [w]
            if rank(Matrix(f, [[u[i] for u in cand] for i in range(m.rows)], m.rows, len(cand))) > r:
                out.append(w)
                marks.append(s + 1)
                r += 1
        return Enhancement(f, tuple(tuple(w) for w in out), tuple(marks))
    if kind.lower() == "injection":
        if m.rows != enh.dim:
            raise ShapeMismatch("enhancement lives on the target of the injection")
        if rank(m) != m.cols:
            raise RankDeficient("an injection must have full column rank")
        out, marks = [], []
        for s in range(enh.dim):
            # unknowns: v (m.cols) and x_1..x_{s}; solve m v - sum x_j w_j = w_s
            cols = [m.column(j) for j in range(m.cols)] + [[-a for a in basis[j]] for j in range(s)]
            A = Matrix(f, [[c[i] for c in cols] for i in range(m.rows)], m.rows, len(cols))
            sol = solve(A, basis[s])
            if sol is not None:
                out.append(tuple(sol[: m.cols]))
                marks.append(s + 1)
        return Enhancement(f, tuple(out), tuple(marks))
    raise InputError(f"unknown kind {kind!r}; expected Surjection or Injection")
