"""Named example complexes and random complex generators."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .complex import FilteredComplex, GradedUnitriangular, change_basis
from .errors import BadParameter, UnknownGenerator
from .linalg import Matrix, nullspace
from .scalars import QQ, ZZ, Integers, PrimeField, Ring


def rp(n: int, ring: Ring = ZZ) -> FilteredComplex:
    """Cellular model of real projective n-space: one cell per degree, d = 2 into odd degrees."""
    if n < 0:
        raise BadParameter("rp needs n >= 0")
    bd = {(k, k + 1): 2 for k in range(2, n + 1, 2)}  # position k+1 has degree k
    return FilteredComplex(ring, tuple(range(n + 1)), bd, tuple(f"e{k}" for k in range(n + 1)))


def cp2(ring: Ring = ZZ) -> FilteredComplex:
    return FilteredComplex(ring, (0, 2, 4), {}, ("a", "b", "c"))


def sphere(n: int, ring: Ring = ZZ) -> FilteredComplex:
    if n < 1:
        raise BadParameter("sphere needs n >= 1")
    return FilteredComplex(ring, (0, n), {}, ("e0", f"e{n}"))


def lens(p: int, ring: Ring = ZZ) -> FilteredComplex:
    """Three cells in degrees 0, 1, 2 with the 2-cell attached p times around the 1-cell."""
    if p < 2:
        raise BadParameter("lens needs p >= 2")
    return FilteredComplex(ring, (0, 1, 2), {(2, 3): p}, ("e0", "e1", "e2"))


def eight(ring: Ring = QQ) -> FilteredComplex:
    """Eight generators whose rook differentials pair (4,1), (5,3), (7,6), (8,2) with 6, 3, 2, 4."""
    return FilteredComplex(ring, (0, 1, 1, 1, 2, 1, 2, 2),
                           {(1, 4): 6, (3, 5): 3, (6, 7): 2, (2, 8): 4},
                           tuple(f"c{i}" for i in range(1, 9)))


def zero(degrees=(0, 1, 2), ring: Ring = QQ) -> FilteredComplex:
    return FilteredComplex(ring, tuple(degrees), {})


def empty(ring: Ring = QQ) -> FilteredComplex:
    return FilteredComplex(ring, (), {})


# ---------------------------------------------------------------- random

def _rand_unit(ring: Ring, rng: random.Random, bound: int = 5):
    if isinstance(ring, PrimeField):
        return ring.coerce(rng.randint(1, ring.p - 1))
    v = 0
    while v == 0:
        v = rng.randint(-bound, bound)
    if isinstance(ring, Integers) or rng.random() < 0.6:
        return ring.coerce(v)
    return ring.coerce(Fraction(v, rng.randint(1, bound)))


def random_degrees(n: int, rng: random.Random, max_degree: int = 3) -> tuple:
    return tuple(rng.randint(0, max_degree) for _ in range(n))


def random_graded_unitriangular(degrees, ring: Ring, rng: random.Random,
                                bound: int = 3, density: float = 0.6) -> GradedUnitriangular:
    n = len(degrees)
    P = Matrix.identity(ring, n)
    for i in range(n):
        for j in range(i + 1, n):
            if degrees[i] == degrees[j] and rng.random() < density:
                if isinstance(ring, PrimeField):
                    P.data[i][j] = ring.coerce(rng.randint(0, ring.p - 1))
                else:
                    P.data[i][j] = ring.coerce(rng.randint(-bound, bound))
    return GradedUnitriangular(tuple(degrees), P)


def random_rook_complex(rng: random.Random, ring: Ring, n: Optional[int] = None,
                        max_n: int = 12, max_degree: int = 3, bound: int = 5) -> FilteredComplex:
    """A random pairing with random Bruhat numbers, hidden by a random graded basis change."""
    n = rng.randint(0, max_n) if n is None else n
    degrees = random_degrees(n, rng, max_degree)
    free_lower = []  # points available as lower ends
    bd = {}
    for s in range(1, n + 1):
        cands = [t for t in free_lower if degrees[t - 1] == degrees[s - 1] - 1]
        if cands and rng.random() < 0.7:
            t = rng.choice(cands)
            free_lower.remove(t)
            bd[(t, s)] = _rand_unit(ring, rng, bound)
        else:
            free_lower.append(s)
    c = FilteredComplex(ring, degrees, bd)
    return change_basis(c, random_graded_unitriangular(degrees, ring, rng, bound=2))


def random_general_complex(rng: random.Random, ring: Ring, n: Optional[int] = None,
                           max_n: int = 12, max_degree: int = 3, bound: int = 2) -> FilteredComplex:
    """Each new generator bounds a random combination of cycles among the earlier ones.

    Over the integers the cycle basis is cleared of denominators, which is
    what produces non-integer rational Bruhat numbers.
    """
    n = rng.randint(0, max_n) if n is None else n
    degrees = random_degrees(n, rng, max_degree)
    field = QQ if isinstance(ring, Integers) else ring
    bd: dict = {}
    for s in range(1, n + 1):
        k = degrees[s - 1]
        if k == 0 or rng.random() < 0.25:
            continue
        prefix = FilteredComplex(ring, degrees[: s - 1], bd)
        rows = prefix.positions(k - 1)
        if not rows:
            continue
        cycles = nullspace(prefix.boundary_matrix(k - 1, field))
        if not cycles:
            continue
        vec = [field.zero] * len(rows)
        for z in cycles:
            a = rng.randint(-bound, bound)
            if a:
                vec = [x + a * y for x, y in zip(vec, z)]
        if isinstance(ring, Integers):
            den = 1
            for x in vec:
                den = den * x.denominator // _gcd(den, x.denominator)
            vec = [int(x * den) for x in vec]
        for t, x in zip(rows, vec):
            if x:
                bd[(t, s)] = ring.coerce(x)
    return FilteredComplex(ring, degrees, bd)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def random_complex(rng: random.Random, ring: Ring, max_n: int = 12, max_degree: int = 3,
                   n: Optional[int] = None) -> FilteredComplex:
    """Either generator, chosen at random; both are valid by construction."""
    if rng.random() < 0.5:
        return random_rook_complex(rng, ring, n=n, max_n=max_n, max_degree=max_degree)
    return random_general_complex(rng, ring, n=n, max_n=max_n, max_degree=max_degree)


# ---------------------------------------------------------------- by name

def generate(name: str, args: list, ring: Ring = ZZ) -> FilteredComplex:
    def need_int(i, what):
        try:
            return int(args[i])
        except (IndexError, ValueError):
            raise BadParameter(f"{name} needs an integer {what}") from None

    if name == "rp":
        return rp(need_int(0, "dimension"), ring)
    if name == "cp2":
        return cp2(ring)
    if name == "sphere":
        return sphere(need_int(0, "dimension"), ring)
    if name == "lens":
        return lens(need_int(0, "order"), ring)
    if name == "eight":
        return eight(ring)
    if name == "random":
        seed = need_int(0, "seed")
        size = need_int(1, "size") if len(args) > 1 else 8
        if size < 0:
            raise BadParameter("size must be nonnegative")
        return random_complex(random.Random(seed), ring, n=size)
    raise UnknownGenerator(f"unknown generator {name!r}; expected rp, cp2, sphere, lens, eight or random")
