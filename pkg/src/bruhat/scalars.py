"""Exact scalars: the rationals, prime fields and the integer ring.

Rationals are plain :class:`fractions.Fraction` values, prime-field elements
are :class:`Fp` residues and integers are plain ``int``.  All three support
the ordinary arithmetic operators, so the linear algebra elsewhere is written
once against ``+ - * /`` and a field object that knows ``zero``, ``one`` and
how to coerce integers.

Text forms: a rational is ``"a/b"`` or ``"a"``, a residue is its decimal
value, and fields are named ``"Q"``, ``"Fp:<p>"`` or ``"Z"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import (
    InputError,
    NonInvertibleDenominator,
    NotPrime,
    ZeroDenominator,
    ZeroElement,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Fp:
    """A residue modulo a prime, always stored in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise InputError(f"mixing residues mod {self.p} and mod {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero residue")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.value == 0:
                raise ZeroDivisionError("inverting zero residue")
            return Fp(pow(pow(self.value, -1, self.p), -e, self.p), self.p)
        return Fp(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Fp, int]


@dataclass(frozen=True)
class Rationals:
    name = "Q"
    characteristic = 0
    is_field = True

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise InputError("cannot read a residue as a rational")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        num, _, den = text.strip().partition("/")
        try:
            return canonicalize(int(num), int(den) if den else 1, self)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"not a rational: {text!r}") from None

    def format(self, x) -> str:
        return str(Fraction(x))

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    p: int
    is_field = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"Fp:{self.p}"

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def coerce(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InputError(f"residue mod {x.p} is not in {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return canonicalize(x.numerator, x.denominator, self)
        return Fp(int(x), self.p)

    def parse(self, text: str) -> Fp:
        num, _, den = text.strip().partition("/")
        try:
            return canonicalize(int(num), int(den) if den else 1, self)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"not an element of {self}: {text!r}") from None

    def format(self, x) -> str:
        return str(self.coerce(x).value)

    def elements(self) -> list[Fp]:
        return [Fp(v, self.p) for v in range(self.p)]

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Integers:
    """The ring of integers; only used as the coefficient ring of Z-complexes."""

    name = "Z"
    characteristic = 0
    is_field = False
    zero = 0
    one = 1

    def coerce(self, x) -> int:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise InputError(f"{x} is not an integer")
            return x.numerator
        if isinstance(x, Fp):
            raise InputError("cannot read a residue as an integer")
        return int(x)

    def parse(self, text: str) -> int:
        try:
            return int(text.strip())
        except ValueError:
            raise InputError(f"not an integer: {text!r}") from None

    def format(self, x) -> str:
        return str(int(x))

    def __str__(self):
        return "Z"


QQ = Rationals()
ZZ = Integers()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


Field = Union[Rationals, PrimeField]
Ring = Union[Rationals, PrimeField, Integers]


def parse_field(text: str) -> Ring:
    text = text.strip()
    if text == "Q":
        return QQ
    if text == "Z":
        return ZZ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise InputError(f"bad field spec {text!r}") from None
        return GF(p)
    raise InputError(f"unknown field {text!r}; expected Q, Fp:<p> or Z")


def canonicalize(num: int, den: int, field: Ring):
    """The unique canonical element equal to ``num / den``."""
    if den == 0:
        raise ZeroDenominator(f"{num}/0")
    if isinstance(field, PrimeField):
        if den % field.p == 0:
            raise NonInvertibleDenominator(f"{den} is not invertible mod {field.p}")
        return Fp(num * pow(den, -1, field.p), field.p)
    if isinstance(field, Integers):
        if num % den:
            raise InputError(f"{num}/{den} is not an integer")
        return num // den
    return Fraction(num, den)


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class SubgroupSpec:
    """The multiplicative subgroup generated by a nonempty list of units."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise InputError("a subgroup needs at least one generator")
        if any(not g for g in gens):
            raise ZeroElement("subgroup generators must be nonzero")
        object.__setattr__(self, "generators", gens)


def subgroup(field: Field, *generators) -> SubgroupSpec:
    return SubgroupSpec(tuple(field.coerce(g) for g in generators))


def _factor(n: int) -> dict[int, int]:
    # trial division; intended for |n| < 2**64
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _exponents(x: Fraction) -> tuple[int, dict[int, int]]:
    sign = 1 if x < 0 else 0
    exps = dict(_factor(abs(x.numerator)))
    for q, e in _factor(x.denominator).items():
        exps[q] = exps.get(q, 0) - e
    return sign, exps


def lattice_contains(generators: Iterable[Iterable[int]], target: Iterable[int]) -> bool:
    """Is ``target`` an integer combination of the ``generators``?

    Row-echelon elimination over the integers (Euclid on each column).
    """
    rows = [list(g) for g in generators if any(g)]
    t = list(target)
    r0 = 0
    for c in range(len(t)):
        while True:
            nz = [i for i in range(r0, len(rows)) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][c]))
            pivot = rows[i_min]
            for i in nz:
                if i != i_min:
                    q = rows[i][c] // pivot[c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], pivot)]
        if not nz:
            if t[c] != 0:
                return False
            continue
        i = nz[0]
        rows[r0], rows[i] = rows[i], rows[r0]
        pivot = rows[r0]
        if t[c] % pivot[c]:
            return False
        q = t[c] // pivot[c]
        t = [a - q * b for a, b in zip(t, pivot)]
        r0 += 1
    return not any(t)


def subgroup_elements(g: SubgroupSpec, field: PrimeField) -> frozenset:
    """All elements of a subgroup of a prime field's unit group."""
    gens = [field.coerce(x) for x in g.generators]
    seen = {field.one}
    frontier = [field.one]
    while frontier:
        nxt = []
        for x in frontier:
            for y in gens:
                z = x * y
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def subgroup_member(x, g: SubgroupSpec, field: Field) -> bool:
    """Decide whether the unit ``x`` lies in the subgroup generated by ``g``."""
    x = field.coerce(x)
    if not x:
        raise ZeroElement("zero is not a unit")
    if isinstance(field, PrimeField):
        return x in subgroup_elements(g, field)

    gens = [_exponents(field.coerce(y)) for y in g.generators]
    sx, ex = _exponents(x)
    primes = sorted(set(ex).union(*(e for _, e in gens)))

    def vec(sign, exps):
        return [sign] + [exps.get(q, 0) for q in primes]

    rows = [vec(s, e) for s, e in gens]
    rows.append([2] + [0] * len(primes))  # the sign coordinate lives in Z/2
    return lattice_contains(rows, vec(sx, ex))
