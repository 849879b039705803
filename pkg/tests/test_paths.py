from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from bruhat import gallery
from bruhat.complex import FilteredComplex, bdata
from bruhat.errors import (
    AcyclicityViolated,
    CharTwoField,
    DeathNotCancellable,
    InvariantViolation,
    NotAMaxwellEvent,
    PositionOutOfRange,
    SlideDegreeMismatch,
    SwapBlockedByIncidence,
)
from bruhat.paths import (
    Birth,
    Death,
    Negate,
    Slide,
    Swap,
    akh_report,
    apply_move,
    classify_swap,
    empty_state,
    inverse_script,
    random_closed_script,
    random_walk,
    realize,
    run,
    simulate,
    verify_akh,
)
from bruhat.scalars import GF, QQ, ZZ
from bruhat.torsion import overlaps, tau_prime

seeds = st.integers(0, 2**32)


def state_from_walk(seed, steps=12):
    rng = random.Random(seed)
    start = empty_state()
    return run(start, random_walk(start, steps, rng, max_n=10, allow_negate=False))


# ---------------------------------------------------------------- single moves

def test_birth_into_empty():
    s = apply_move(empty_state(), Birth(1, 1, 1))
    assert s.degrees == (1, 2) and s.boundary == {(1, 2): 1}
    assert bdata(s.over(QQ)).pairs == ((2, 1, 1),)


def test_negate_flips_lambda():
    s = apply_move(gallery.lens(5), Negate(3))
    assert bdata(s.over(QQ)).pairs == ((3, 2, -5),)
    s = apply_move(gallery.lens(5), Negate(2))
    assert bdata(s.over(QQ)).pairs == ((3, 2, -5),)


def test_move_errors():
    lens = gallery.lens(5)
    with pytest.raises(DeathNotCancellable):
        apply_move(lens, Death(2))
    with pytest.raises(SwapBlockedByIncidence):
        apply_move(lens, Swap(2))
    with pytest.raises(SlideDegreeMismatch):
        apply_move(lens, Slide(1, 1))
    with pytest.raises(PositionOutOfRange):
        apply_move(lens, Swap(3))
    with pytest.raises(PositionOutOfRange):
        apply_move(lens, Birth(5, 0))
    # a cancelling pair with another incidence cannot die
    c = FilteredComplex(ZZ, (0, 1, 1), {(1, 2): 1, (1, 3): 1})
    with pytest.raises(DeathNotCancellable):
        apply_move(c, Death(1))


@given(seeds, st.data())
def test_birth_then_death_is_identity(seed, data):
    s = state_from_walk(seed)
    p = data.draw(st.integers(1, s.n + 1))
    k = data.draw(st.integers(0, 3))
    sign = data.draw(st.sampled_from([1, -1]))
    born = apply_move(s, Birth(p, k, sign))
    assert apply_move(born, Death(p)) == s


@given(seeds)
def test_birth_keeps_old_pairs(seed):
    s = state_from_walk(seed)
    before = bdata(s.over(QQ))
    born = apply_move(s, Birth(s.n + 1, 1))
    after = bdata(born.over(QQ))
    assert set(before.pairs) <= set(after.pairs)
    assert (s.n + 2, s.n + 1, 1) in after.pairs


@given(seeds, st.data())
def test_involutive_moves(seed, data):
    s = state_from_walk(seed)
    if s.n < 2:
        return
    p = data.draw(st.integers(1, s.n - 1))
    assert apply_move(apply_move(s, Negate(p)), Negate(p)) == s
    try:
        once = apply_move(s, Swap(p))
    except SwapBlockedByIncidence:
        return
    assert apply_move(once, Swap(p)) == s


@given(seeds, st.data(), st.sampled_from([QQ, GF(5)]))
def test_slide_keeps_bdata(seed, data, f):
    s = state_from_walk(seed)
    same = [p for p in range(1, s.n) if s.deg(p) == s.deg(p + 1)]
    if not same:
        return
    p = data.draw(st.sampled_from(same))
    q = data.draw(st.integers(-3, 3))
    assert bdata(apply_move(s, Slide(p, q)).over(f)) == bdata(s.over(f))


@given(seeds)
def test_inverse_script_returns(seed):
    rng = random.Random(seed)
    start, script = random_closed_script(rng, max_n=10)
    assert run(start, script) == start
    half = script[: len(script) // 2]
    assert run(run(start, half), inverse_script(start, half)) == start


# ---------------------------------------------------------------- swaps

def test_trivial_swap_of_distant_pairs():
    c = FilteredComplex(ZZ, (0, 1, 0, 1), {(1, 2): 1, (3, 4): 1})
    after = apply_move(c, Swap(2))  # two points of different degree: a plain crossing
    with pytest.raises(NotAMaxwellEvent):
        classify_swap(c, after, 2)
    c = FilteredComplex(ZZ, (0, 1, 1, 2), {(1, 2): 1, (3, 4): 1})
    after = apply_move(c, Swap(2))
    rep = classify_swap(c, after, 2, QQ)
    assert rep.kind == "trivial"


def test_projective_plane_construction_is_nontrivial():
    # a, b, c in degrees 0, 2, 4; a cancelling pair e, d is born after a,
    # b slides over d l times, then b and d cross
    l = 7
    state = gallery.cp2()
    state = apply_move(state, Birth(2, 1, 1))
    state = apply_move(state, Slide(3, l))
    after = apply_move(state, Swap(3))
    rep = classify_swap(state, after, 3, QQ)
    assert rep.kind == "nontrivial"
    d = bdata(after.over(QQ))
    assert d.pairs == ((3, 2, l),)


def test_three_generator_nontrivial_swap():
    c = FilteredComplex(ZZ, (0, 1, 1), {(1, 2): 1, (1, 3): 1})
    after = apply_move(c, Swap(2))
    assert bdata(c.over(QQ)).pairs == ((2, 1, 1),)
    assert bdata(after.over(QQ)).pairs == ((2, 1, 1),)
    rep = classify_swap(c, after, 2, QQ)
    assert rep.kind == "nontrivial"
    assert {row[0] for row in rep.involved} == {1, 2, 3}


def test_classify_swap_detects_outside_change():
    c = FilteredComplex(ZZ, (0, 1, 1, 0, 1), {(1, 2): 1, (4, 5): 1})
    after = apply_move(c, Swap(2))
    broken = FilteredComplex(ZZ, after.degrees, {k: v for k, v in after.boundary.items() if k != (4, 5)})
    with pytest.raises(InvariantViolation):
        classify_swap(c, broken, 2, QQ)


@given(seeds, st.sampled_from([QQ, GF(5)]))
def test_tau_prime_flips_exactly_at_events(seed, f):
    rng = random.Random(seed)
    start, script = random_closed_script(rng, max_n=10, allow_negate=False)
    trace = simulate(script, start, f)
    prev = trace.start_tau_prime
    for step in trace.steps:
        flips = step.move.kind == "swap" or step.cusp_sign == -1
        assert step.tau_prime == (-prev if flips else prev)
        prev = step.tau_prime


# ---------------------------------------------------------------- simulation and the parity law

def test_simulate_examples():
    t = simulate([], empty_state(), QQ)
    assert t.steps == [] and t.maxwell_count == 0 and t.negative_cusps == 0
    t = simulate([Birth(1, 0, 1), Death(1)], empty_state(), QQ)
    assert t.maxwell_count == 0 and t.cusps == [("birth", 1), ("death", 1)]
    assert verify_akh(t)
    t = simulate([Birth(1, 0, 1), Negate(2), Death(1)], empty_state(), QQ)
    assert t.cusps == [("birth", 1), ("death", -1)]
    assert t.negative_cusps == 1 and t.maxwell_count == 0 and t.orientation_flips == 1
    assert verify_akh(t)


def test_parity_law_needs_acyclic_states_and_odd_characteristic():
    t = simulate([Birth(1, 0, 1)], gallery.sphere(2), QQ)
    with pytest.raises(AcyclicityViolated):
        akh_report(t)
    with pytest.raises(CharTwoField):
        akh_report(simulate([Birth(1, 0, 1)], empty_state(), GF(2)))


def test_realize_five_round_trip():
    script = realize(5)
    forward = run(empty_state(), script)
    vals = {v for _, _, v in bdata(forward.over(QQ)).pairs}
    assert {Fraction(5), Fraction(-1, 5)} <= vals
    full = script + inverse_script(empty_state(), script)
    t = simulate(full, empty_state(), QQ)
    rep = akh_report(t)
    assert rep.ok and rep.corollary


@given(seeds, st.sampled_from([QQ, GF(5), GF(7)]))
def test_parity_law_random(seed, f):
    start, script = random_closed_script(random.Random(seed), max_n=10)
    rep = akh_report(simulate(script, start, f))
    assert rep.ok, rep


@pytest.mark.parametrize("lam", [1, -1, 2, -2, 5, Fraction(7, 3), Fraction(-7, 3), Fraction(2, 9)])
def test_realize_rational(lam):
    lam = Fraction(lam)
    d = bdata(run(empty_state(), realize(lam)).over(QQ))
    vals = [v for _, _, v in d.pairs]
    assert lam in vals and -1 / lam in vals


@pytest.mark.parametrize("lam", range(1, 7))
def test_realize_f7(lam):
    f = GF(7)
    d = bdata(run(empty_state(), realize(lam, field=f)).over(f))
    vals = [v for _, _, v in d.pairs]
    assert f.coerce(lam) in vals and -f.one / lam in vals


def test_realize_inside_a_base():
    base = gallery.lens(3)
    script = realize(4, base, degree=1, insert_position=2)
    d = bdata(run(base, script).over(QQ))
    vals = [v for _, _, v in d.pairs]
    assert 4 in vals and Fraction(-1, 4) in vals and 3 in vals
