"""Dense exact matrices over a field (or the integers) and Gaussian elimination."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import ShapeMismatch
from .scalars import QQ, ZZ, Integers, Ring


class Matrix:
    """A dense ``rows x cols`` matrix; ``data`` is a list of row lists.

    Indices are 0-based here.  The public objects that talk about filtration
    positions (rook hits, complexes) use 1-based indices instead.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Ring, data: Sequence[Sequence], rows: Optional[int] = None,
                 cols: Optional[int] = None):
        self.field = field
        self.data = [[field.coerce(x) for x in row] for row in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if len(self.data) != self.rows or any(len(r) != cols for r in self.data):
            raise ShapeMismatch("ragged matrix data")
        if not self.data:
            self.data = []

    @classmethod
    def _raw(cls, field, data, rows, cols):
        m = cls.__new__(cls)
        m.field, m.data, m.rows, m.cols = field, data, rows, cols
        return m

    @classmethod
    def zeros(cls, field: Ring, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: Ring, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = value

    def copy(self) -> "Matrix":
        return Matrix._raw(self.field, [list(r) for r in self.data], self.rows, self.cols)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [self.column(j) for j in range(self.cols)],
                           self.cols, self.rows)

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for row in self.data:
            out.append([_dot(row, col, z) for col in ocols])
        return Matrix._raw(self.field, out, self.rows, other.cols)

    def apply(self, v: Sequence) -> list:
        z = self.field.zero
        return [_dot(row, v, z) for row in self.data]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatch("shapes differ")
        return Matrix._raw(self.field, [[a + b for a, b in zip(r, s)]
                                        for r, s in zip(self.data, other.data)],
                           self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, [[-a for a in r] for r in self.data], self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return Matrix._raw(self.field, [[c * a for a in r] for r in self.data], self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix._raw(self.field, [[self.data[i][j] for j in cols] for i in rows],
                           len(rows), len(cols))

    def over(self, field: Ring) -> "Matrix":
        return Matrix(field, self.data, self.rows, self.cols)

    def is_upper_unitriangular(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            for j in range(i + 1):
                if self.data[i][j] != (1 if i == j else 0):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(self.field.format(x) for x in r) + "]" for r in self.data)
        return f"Matrix({self.field}, {self.rows}x{self.cols}, [{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]


def _dot(a, b, zero):
    s = zero
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _as_field(m: Matrix) -> Matrix:
    # linear algebra over Z is done in Q
    return m.over(QQ) if isinstance(m.field, Integers) else m


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = _as_field(m).copy()
    data = a.data
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        p = next((i for i in range(r, a.rows) if data[i][c]), None)
        if p is None:
            continue
        data[r], data[p] = data[p], data[r]
        inv = a.field.one / data[r][c]
        data[r] = [x * inv for x in data[r]]
        for i in range(a.rows):
            if i != r and data[i][c]:
                f = data[i][c]
                data[i] = [x - f * y for x, y in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[list]:
    """A basis of ``{v : m v = 0}``."""
    a, pivots = rref(m)
    f = a.field
    free = [j for j in range(a.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [f.zero] * a.cols
        v[j] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = -a.data[r][j]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[list]:
    """Some ``x`` with ``m x = b``, or ``None`` if the system is inconsistent."""
    mf = _as_field(m)
    f = mf.field
    aug = Matrix._raw(f, [list(mf.data[i]) + [f.coerce(b[i])] for i in range(m.rows)],
                      m.rows, m.cols + 1)
    a, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [f.zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = a.data[r][m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices have inverses")
    n = m.rows
    mf = _as_field(m)
    f = mf.field
    aug = Matrix._raw(f, [list(mf.data[i]) + [f.one if j == i else f.zero for j in range(n)]
                          for i in range(n)], n, 2 * n)
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix._raw(f, [row[n:] for row in a.data], n, n)


def det(m: Matrix):
    if m.rows != m.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    a = _as_field(m).copy()
    data = a.data
    n = a.rows
    d = a.field.one
    for c in range(n):
        p = next((i for i in range(c, n) if data[i][c]), None)
        if p is None:
            return m.field.zero
        if p != c:
            data[c], data[p] = data[p], data[c]
            d = -d
        d = d * data[c][c]
        inv = a.field.one / data[c][c]
        for i in range(c + 1, n):
            if data[i][c]:
                fct = data[i][c] * inv
                data[i] = [x - fct * y for x, y in zip(data[i], data[c])]
    if isinstance(m.field, Integers):
        return ZZ.coerce(d)
    return d


def unitriangular_inverse(m: Matrix) -> Matrix:
    """Inverse of an upper unitriangular matrix by back substitution (stays in the ring)."""
    n = m.rows
    f = m.field
    inv = Matrix.identity(f, n)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = f.zero
            for k in range(i + 1, j + 1):
                if m.data[i][k] and inv.data[k][j]:
                    s = s + m.data[i][k] * inv.data[k][j]
            inv.data[i][j] = -s
    return inv


def block(field: Ring, rows: int, cols: int, entries: dict) -> Matrix:
    m = Matrix.zeros(field, rows, cols)
    for (i, j), v in entries.items():
        m.data[i][j] = field.coerce(v)
    return m
