"""One-parameter move calculus on filtered complexes.

A path of complexes is modelled by a script of elementary moves:

* ``Birth(position, degree, sign)`` inserts a cancelling pair: a lower point of
  ``degree`` at ``position`` and an upper point of ``degree + 1`` right after
  it, with ``d(upper) = sign * lower``.
* ``Death(position)`` removes such a pair again.
* ``Swap(position)`` transposes the generators at ``position`` and
  ``position + 1`` (two critical values cross).
* ``Slide(position, coeff)`` replaces the generator at ``position + 1`` by
  itself plus ``coeff`` times the one at ``position`` (same degree).
* ``Negate(position)`` flips the orientation of one generator.

Positions are 1-based.  :func:`simulate` runs a script and keeps the event
ledger (crossings, cusps and their signs, orientation flips, B-data and
``tau_prime`` after each step); :func:`verify_akh` checks the parity law
relating them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .complex import BData, FilteredComplex, bdata
from .enhanced_linear import rook_reduce
from .errors import (
    AcyclicityViolated,
    CharTwoField,
    DeathNotCancellable,
    InputError,
    InvariantViolation,
    MoveError,
    NotAMaxwellEvent,
    PositionOutOfRange,
    SlideDegreeMismatch,
    SwapBlockedByIncidence,
)
from .linalg import Matrix
from .scalars import QQ, ZZ, Field, PrimeField, Ring
from .torsion import tau_prime


@dataclass(frozen=True)
class Birth:
    position: int
    degree: int
    sign: int = 1
    kind = "birth"


@dataclass(frozen=True)
class Death:
    position: int
    kind = "death"


@dataclass(frozen=True)
class Swap:
    position: int
    kind = "swap"


@dataclass(frozen=True)
class Slide:
    position: int
    coeff: int
    kind = "slide"


@dataclass(frozen=True)
class Negate:
    position: int
    kind = "negate"


Move = Union[Birth, Death, Swap, Slide, Negate]


def empty_state(ring: Ring = ZZ) -> FilteredComplex:
    return FilteredComplex(ring, (), {})


def _fresh_names(names, count):
    if names is None:
        return None
    taken = set(names)
    out, i = [], 1
    while len(out) < count:
        cand = f"g{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out


def _check_pos(state: FilteredComplex, p: int, span: int) -> None:
    if not (1 <= p and p + span - 1 <= state.n):
        raise PositionOutOfRange(f"position {p} needs generators {p}..{p + span - 1}, have {state.n}")


def apply_move(state: FilteredComplex, m: Move) -> FilteredComplex:
    ring = state.ring
    n = state.n
    bd = state.boundary
    if isinstance(m, Birth):
        p = m.position
        if not (1 <= p <= n + 1):
            raise PositionOutOfRange(f"birth position {p} outside 1..{n + 1}")
        if m.sign not in (1, -1):
            raise MoveError("birth sign must be +1 or -1")
        if m.degree < 0:
            raise MoveError("birth degree must be nonnegative")

        def sh(x):
            return x if x < p else x + 2

        new = {(sh(t), sh(s)): v for (t, s), v in bd.items()}
        new[(p, p + 1)] = ring.coerce(m.sign)
        degrees = state.degrees[: p - 1] + (m.degree, m.degree + 1) + state.degrees[p - 1:]
        names = None
        if state.names is not None:
            fresh = _fresh_names(state.names, 2)
            names = state.names[: p - 1] + tuple(fresh) + state.names[p - 1:]
        return FilteredComplex(ring, degrees, new, names)

    if isinstance(m, Death):
        p = m.position
        _check_pos(state, p, 2)
        if state.deg(p + 1) != state.deg(p) + 1:
            raise DeathNotCancellable(f"generators {p}, {p + 1} are not of consecutive degrees")
        v = bd.get((p, p + 1))
        if v is None or v * v != ring.one:
            raise DeathNotCancellable(f"coefficient of c{p} in d(c{p + 1}) is not +-1")
        for (t, s) in bd:
            if (t == p and s != p + 1) or (s == p + 1 and t != p):
                raise DeathNotCancellable(f"generators {p}, {p + 1} have other incidences, e.g. ({t}, {s})")

        def sh(x):
            return x if x < p else x - 2

        new = {(sh(t), sh(s)): w for (t, s), w in bd.items() if t not in (p, p + 1) and s not in (p, p + 1)}
        degrees = state.degrees[: p - 1] + state.degrees[p + 1:]
        names = state.names[: p - 1] + state.names[p + 1:] if state.names else None
        return FilteredComplex(ring, degrees, new, names)

    if isinstance(m, Swap):
        p = m.position
        _check_pos(state, p, 2)
        if state.deg(p + 1) == state.deg(p) + 1 and (p, p + 1) in bd:
            raise SwapBlockedByIncidence(f"c{p} appears in d(c{p + 1}); the crossing is not independent")

        def tr(x):
            return p + 1 if x == p else p if x == p + 1 else x

        new = {(tr(t), tr(s)): v for (t, s), v in bd.items()}
        degrees = list(state.degrees)
        degrees[p - 1], degrees[p] = degrees[p], degrees[p - 1]
        names = None
        if state.names:
            nl = list(state.names)
            nl[p - 1], nl[p] = nl[p], nl[p - 1]
            names = tuple(nl)
        return FilteredComplex(ring, tuple(degrees), new, names)

    if isinstance(m, Slide):
        p = m.position
        _check_pos(state, p, 2)
        if state.deg(p) != state.deg(p + 1):
            raise SlideDegreeMismatch(f"generators {p} and {p + 1} have different degrees")
        c = ring.coerce(m.coeff)
        e, l = p, p + 1
        new = dict(bd)
        # the later generator becomes c_l + c * c_e: its boundary gains c * d(c_e)
        for (t, s), v in bd.items():
            if s == e:
                new[(t, l)] = new.get((t, l), ring.zero) + c * v
        # and wherever c_l appeared, c_e must be compensated
        for (t, s), v in bd.items():
            if t == l:
                new[(e, s)] = new.get((e, s), ring.zero) - c * v
        return FilteredComplex(ring, state.degrees, new, state.names)

    if isinstance(m, Negate):
        p = m.position
        _check_pos(state, p, 1)
        new = {(t, s): (-v if (t == p) != (s == p) else v) for (t, s), v in bd.items()}
        return FilteredComplex(ring, state.degrees, new, state.names)

    raise InputError(f"unknown move {m!r}")


def inverse_move(state: FilteredComplex, m: Move) -> Move:
    """The move undoing ``m`` when applied to ``apply_move(state, m)``."""
    if isinstance(m, Birth):
        return Death(m.position)
    if isinstance(m, Death):
        sign = state.coeff(m.position, m.position + 1)
        return Birth(m.position, state.deg(m.position), 1 if sign == 1 else -1)
    if isinstance(m, Slide):
        return Slide(m.position, -m.coeff)
    return m


def inverse_script(start: FilteredComplex, script: Sequence[Move]) -> list[Move]:
    states = [start]
    for m in script:
        states.append(apply_move(states[-1], m))
    return [inverse_move(states[i], script[i]) for i in range(len(script) - 1, -1, -1)]


def run(start: FilteredComplex, script: Sequence[Move]) -> FilteredComplex:
    state = start
    for m in script:
        state = apply_move(state, m)
    return state


# ---------------------------------------------------------------- swaps

@dataclass(frozen=True)
class SwapReport:
    kind: str  # "trivial" or "nontrivial"
    involved: tuple  # (point, partner before, lambda before, partner after, lambda after)


def _partners(d: BData) -> dict:
    out = {}
    for s, t, v in d.pairs:
        out[s] = (t, v)
        out[t] = (s, v)
    return out


def classify_swap(before: FilteredComplex, after: FilteredComplex, position: int,
                  field: Optional[Field] = None) -> SwapReport:
    """Compare B-data across a crossing of two same-degree generators.

    Points are matched through the transposition of ``position`` and
    ``position + 1``.  Away from the swapped points and their partners nothing
    may change; the event is trivial when nothing changes at all.
    """
    p = position
    _check_pos(before, p, 2)
    if before.deg(p) != before.deg(p + 1):
        raise NotAMaxwellEvent(f"generators {p}, {p + 1} have different degrees")
    field = field or before.field
    d0, d1 = bdata(before.over(field)), bdata(after.over(field))

    def tr(x):
        return p + 1 if x == p else p if x == p + 1 else x

    moved = {tr(x): (None if y is None else (tr(y[0]), y[1]))
             for x, y in ((x, _partners(d0).get(x)) for x in range(1, before.n + 1))}
    now = {x: _partners(d1).get(x) for x in range(1, after.n + 1)}
    involved = {p, p + 1}
    for x in (p, p + 1):
        for table in (moved, now):
            if table.get(x):
                involved.add(table[x][0])
    for x in range(1, after.n + 1):
        if x not in involved and moved[x] != now[x]:
            raise InvariantViolation(f"point {x}, not involved in the crossing, changed its pair")
    rows = []
    for x in sorted(involved):
        a, b = moved.get(x), now.get(x)
        rows.append((x, a[0] if a else None, a[1] if a else None, b[0] if b else None, b[1] if b else None))
    kind = "trivial" if all(moved[x] == now[x] for x in involved) else "nontrivial"
    return SwapReport(kind, tuple(rows))


# ---------------------------------------------------------------- simulation

@dataclass
class Step:
    move: Move
    event: str
    bdata: BData
    tau_prime: object
    cusp_sign: Optional[int] = None


@dataclass
class PathTrace:
    field: Field
    start: FilteredComplex
    start_bdata: BData
    start_tau_prime: object
    steps: list = dc_field(default_factory=list)
    end: Optional[FilteredComplex] = None

    @property
    def maxwell_count(self) -> int:
        return sum(1 for s in self.steps if s.move.kind == "swap")

    @property
    def cusps(self) -> list:
        return [(s.move.kind, s.cusp_sign) for s in self.steps if s.cusp_sign is not None]

    @property
    def negative_cusps(self) -> int:
        return sum(1 for _, sign in self.cusps if sign == -1)

    @property
    def orientation_flips(self) -> int:
        return sum(1 for s in self.steps if s.move.kind == "negate")

    @property
    def tau_prime_ledger(self) -> list:
        return [self.start_tau_prime] + [s.tau_prime for s in self.steps]


def simulate(script: Sequence[Move], start: Optional[FilteredComplex] = None,
             field: Optional[Field] = None) -> PathTrace:
    start = start if start is not None else empty_state()
    field = field or start.field
    d = bdata(start.over(field))
    trace = PathTrace(field, start, d, tau_prime(d).value)
    state = start
    for i, m in enumerate(script, start=1):
        try:
            new = apply_move(state, m)
        except MoveError as exc:
            raise type(exc)(f"step {i} ({m.kind}): {exc}") from None
        cusp = None
        if isinstance(m, Birth):
            event, cusp = "birth", m.sign
        elif isinstance(m, Death):
            event = "death"
            cusp = 1 if state.coeff(m.position, m.position + 1) == 1 else -1
        elif isinstance(m, Swap):
            if state.deg(m.position) == state.deg(m.position + 1):
                event = "maxwell-" + classify_swap(state, new, m.position, field).kind
            else:
                event = "crossing"
        else:
            event = m.kind
        d = bdata(new.over(field))
        trace.steps.append(Step(m, event, d, tau_prime(d).value, cusp))
        state = new
    trace.end = state
    return trace


@dataclass(frozen=True)
class AkhReport:
    ok: bool
    identity: bool
    corollary: Optional[bool]
    failed_step: Optional[int] = None


def akh_report(trace: PathTrace) -> AkhReport:
    """Check ``tau'(end)/tau'(start) * (-1)^(X + nC) = 1`` at every step boundary.

    ``X`` counts crossings, ``nC`` negative cusps; explicit orientation flips
    are folded into the same sign.  When the path starts and ends at the empty
    complex, also check that ``X + nC`` (plus flips) is even.
    """
    f = trace.field
    if isinstance(f, PrimeField) and f.p == 2:
        raise CharTwoField("the parity law needs characteristic other than 2")
    for i, d in enumerate([trace.start_bdata] + [s.bdata for s in trace.steps]):
        if d.homological:
            raise AcyclicityViolated(f"state after step {i} has homological points {list(d.homological)}")
    t0 = trace.start_tau_prime
    parity = 0
    failed = None
    for i, s in enumerate(trace.steps, start=1):
        if s.move.kind in ("swap", "negate") or s.cusp_sign == -1:
            parity += 1
        expected = t0 if parity % 2 == 0 else -t0
        if s.tau_prime != expected and failed is None:
            failed = i
    identity = failed is None
    corollary = None
    if trace.start.n == 0 and trace.end is not None and trace.end.n == 0:
        corollary = parity % 2 == 0
    return AkhReport(identity and corollary is not False, identity, corollary, failed)


def verify_akh(trace: PathTrace) -> bool:
    return akh_report(trace).ok


# ---------------------------------------------------------------- random scripts

def legal_moves(state: FilteredComplex, max_n: int, max_degree: int, rng: random.Random,
                allow_negate: bool = True) -> list[Move]:
    n = state.n
    moves: list[Move] = []
    if n + 2 <= max_n:
        p = rng.randint(1, n + 1)
        moves.append(Birth(p, rng.randint(0, max_degree), rng.choice((1, -1))))
    for p in range(1, n):
        dp, dq = state.deg(p), state.deg(p + 1)
        if not (dq == dp + 1 and (p, p + 1) in state.boundary):
            moves.append(Swap(p))
        if dp == dq:
            moves.append(Slide(p, rng.choice((-2, -1, 1, 2))))
        try:
            apply_move(state, Death(p))
            moves.append(Death(p))
        except MoveError:
            pass
    if allow_negate and n:
        moves.append(Negate(rng.randint(1, n)))
    return moves


def random_walk(start: FilteredComplex, steps: int, rng: random.Random, max_n: int = 12,
                max_degree: int = 3, allow_negate: bool = True) -> list[Move]:
    script = []
    state = start
    for _ in range(steps):
        options = legal_moves(state, max_n, max_degree, rng, allow_negate)
        if not options:
            break
        births = [m for m in options if isinstance(m, Birth)]
        # favour births while the complex is small so that walks get going
        if births and (state.n < 4 or rng.random() < 0.2):
            m = births[0]
        else:
            m = rng.choice(options)
        state = apply_move(state, m)
        script.append(m)
    return script


def random_closed_script(rng: random.Random, max_n: int = 12, steps: Optional[int] = None,
                         from_empty: Optional[bool] = None,
                         allow_negate: bool = True) -> tuple[FilteredComplex, list[Move]]:
    """A random start state (empty or reached from empty) and a script returning to it."""
    if from_empty is None:
        from_empty = rng.random() < 0.5
    start = empty_state()
    if not from_empty:
        start = run(start, random_walk(start, rng.randint(1, 10), rng, max_n, allow_negate=False))
    steps = steps if steps is not None else rng.randint(3, 20)
    forward = random_walk(start, steps, rng, max_n, allow_negate=allow_negate)
    return start, forward + inverse_script(start, forward)


# ---------------------------------------------------------------- realization

def _integer_recipe(l: int, k: int, pos: int) -> list[Move]:
    # b, a born; then d, c between them; a <- a + l c; a and c cross
    return [Birth(pos, k - 1, 1), Birth(pos + 1, k - 1, 1), Slide(pos + 2, l), Swap(pos + 2)]


def _general_col_op(dst: int, src: int, coeff: int, base: int) -> list[Move]:
    """Column ``dst`` += ``coeff`` * column ``src`` on a block of same-degree generators.

    Columns are 0-based within the block starting at global position ``base``.
    Only adjacent slides are available, so ``src`` is carried next to ``dst``
    by adjacent swaps and carried back afterwards.
    """
    moves: list[Move] = []
    if src < dst:
        there = [Swap(base + i) for i in range(src, dst - 1)]
        moves += there + [Slide(base + dst - 1, coeff)] + there[::-1]
    else:
        there = [Swap(base + i - 1) for i in range(src, dst, -1)]
        moves += there + [Slide(base + dst, coeff)] + there[::-1]
    return moves


def _swap_cols(i: int, j: int, base: int) -> list[Move]:
    if i == j:
        return []
    i, j = min(i, j), max(i, j)
    right = [Swap(base + x) for x in range(i, j)]
    left = [Swap(base + x) for x in range(j - 2, i - 1, -1)]
    return right + left


def _column_reduction_ops(D: list[list[int]]) -> list[tuple]:
    """Integer column operations taking the unimodular ``D`` to the identity.

    Returns a list of ``("add", dst, src, q)``, ``("swap", i, j)``, ``("neg", j)``.
    """
    n = len(D)
    M = [list(r) for r in D]
    ops: list[tuple] = []

    def add(dst, src, q):
        for r in M:
            r[dst] += q * r[src]
        ops.append(("add", dst, src, q))

    def swap(i, j):
        if i != j:
            for r in M:
                r[i], r[j] = r[j], r[i]
            ops.append(("swap", i, j))

    for i in range(n):
        while True:
            nz = [j for j in range(i, n) if M[i][j]]
            j = min(nz, key=lambda j: abs(M[i][j]))
            swap(i, j)
            rest = [j for j in range(i + 1, n) if M[i][j]]
            if not rest:
                break
            for j in rest:
                add(j, i, -(M[i][j] // M[i][i]))
        if M[i][i] == -1:
            for r in M:
                r[i] = -r[i]
            ops.append(("neg", i))
    for j in range(n):
        for r in range(j + 1, n):
            if M[r][j]:
                add(j, r, -M[r][j])
    assert all(M[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    return ops


def unimodular_script(D: Sequence[Sequence[int]], k: int, pos: int) -> list[Move]:
    """Moves producing ``n`` lower points of degree ``k-1`` followed by ``n`` upper
    points of degree ``k`` at ``pos``, with boundary matrix exactly ``D``."""
    n = len(D)
    script: list[Move] = [Birth(pos + 2 * i, k - 1, 1) for i in range(n)]
    # order is now r1 u1 r2 u2 ...; carry every lower point left past the uppers
    for i in range(1, n):
        start = pos + 2 * i  # r_{i+1} sits here, after i uppers
        script += [Swap(start - 1 - x) for x in range(i)]
    base = pos + n
    ops = _column_reduction_ops([list(r) for r in D])
    for op in reversed(ops):
        if op[0] == "add":
            _, dst, src, q = op
            script += _general_col_op(dst, src, -q, base)
        elif op[0] == "swap":
            script += _swap_cols(op[1], op[2], base)
        else:
            script.append(Negate(base + op[1]))
    return script


def _rational_block(x: int, y: int) -> list[list[int]]:
    # unimodular, with lower-left corner minors y, x, -y, 1
    return [[1, 0, 0, 0],
            [0, -1, 0, 0],
            [x, 0, 1, 0],
            [y, 1, 0, -1]]


def realize(lam, base: Optional[FilteredComplex] = None, degree: int = 2,
            insert_position: Optional[int] = None, field: Optional[Field] = None) -> list[Move]:
    """A script after which the B-data contains a pair with Bruhat number ``lam`` and one with ``-1/lam``.

    ``degree`` is the degree of the two new upper points.  An integer ``lam``
    takes two births, one slide and one crossing.  A non-integer rational
    ``x/y`` is realized inside a block of four cancelling pairs whose boundary
    matrix is unimodular with the right corner minors, followed by orientation
    fixes for the signs.
    """
    base = base if base is not None else empty_state()
    field = field or QQ
    if degree < 1:
        raise InputError("the new upper points need degree at least 1")
    pos = base.n + 1 if insert_position is None else insert_position
    if not (1 <= pos <= base.n + 1):
        raise PositionOutOfRange(f"insert position {pos} outside 1..{base.n + 1}")
    if isinstance(field, PrimeField):
        l = field.coerce(lam).value
        if l == 0:
            raise InputError("Bruhat numbers are nonzero")
        return _integer_recipe(l, degree, pos)
    lam = Fraction(lam)
    if lam == 0:
        raise InputError("Bruhat numbers are nonzero")
    if lam.denominator == 1:
        return _integer_recipe(lam.numerator, degree, pos)
    x, y = lam.numerator, lam.denominator
    D = _rational_block(x, y)
    script = unimodular_script(D, degree, pos)
    # the rook form of D holds +-x/y and +-y/x; fix the signs by reorienting uppers
    rook, _ = rook_reduce(Matrix(QQ, D))
    want = {abs(lam): lam, abs(1 / lam): -1 / lam}
    for _, j, v in rook.hits:
        if abs(v) in want and v != want[abs(v)]:
            script.append(Negate(pos + len(D) + j - 1))
            want.pop(abs(v))
        elif abs(v) in want:
            want.pop(abs(v))
    return script
