from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from bruhat import gallery
from bruhat.complex import BData, FilteredComplex, bdata, homology_enhancement
from bruhat.errors import FieldMismatch, NotABasis
from bruhat.linalg import Matrix, det, inverse
from bruhat.scalars import GF, QQ, subgroup
from bruhat.torsion import (
    bdata_equal_mod_subgroup,
    chain_torsion,
    milnor_torsion,
    overlaps,
    perm_sigma,
    tau,
    tau_abs,
    tau_prime,
)

from oracles import inversion_count

seeds = st.integers(0, 2**32)


def oracle(c, rng=None):
    return milnor_torsion(c, homology_enhancement(c), rng).value


def test_sigma_eight():
    sig = perm_sigma(bdata(gallery.eight()))
    assert sig.rows[1] == (2, 3, 6, 4)
    assert sig.rows[2] == (8, 5, 7)
    assert inversion_count(sig.rows[1]) == 1 and inversion_count(sig.rows[2]) == 2
    assert sig.sign == -1


def test_sigma_trivial_cases():
    assert perm_sigma(bdata(gallery.zero())).sign == 1
    assert perm_sigma(BData(2, (0, 1), ((2, 1, 5),), QQ)).sign == 1


def test_tau_examples():
    d = bdata(gallery.eight())
    assert tau(d).value == -4
    assert tau(bdata(gallery.zero())).value == 1
    for n in range(2, 9):
        assert tau(bdata(gallery.rp(n, QQ))).abs == 2 ** (n // 2)


def test_tau_prime_examples():
    d = bdata(gallery.eight())
    assert overlaps(d) == 2
    assert tau_prime(d).value == 4
    assert tau_prime(bdata(gallery.zero())).value == 1
    nested = BData(4, (1, 2, 2, 1), ((3, 2, 5), (4, 1, 7)), QQ)
    assert overlaps(nested) == 0
    # degree-2 upper point contributes 5, degree-1 upper point contributes 1/7
    assert tau_prime(nested).value == Fraction(5, 7)


def test_milnor_examples():
    z = gallery.zero()
    assert oracle(z) == 1
    assert oracle(gallery.eight()) == -4
    for lam in (Fraction(3), Fraction(2, 5)):
        c = FilteredComplex(QQ, (0, 1), {(1, 2): lam})
        assert oracle(c) == 1 / lam
        c = FilteredComplex(QQ, (1, 2), {(1, 2): lam})
        assert oracle(c) == lam


def test_milnor_rejects_wrong_homology():
    from bruhat.complex import HomologyEnhancement
    c = gallery.sphere(2, QQ)
    with pytest.raises(NotABasis):
        milnor_torsion(c, HomologyEnhancement(((1, 0, (1, 0)),)))


def test_tau_abs_fp():
    f = GF(7)
    assert tau_abs(f.coerce(6), f) == 1
    assert tau_abs(f.coerce(3), f) == 3
    assert tau_abs(Fraction(-3, 2), QQ) == Fraction(3, 2)


@given(seeds, st.sampled_from([QQ, GF(5), GF(7)]))
def test_tau_agrees_with_oracle(seed, f):
    c = gallery.random_complex(random.Random(seed), f, max_n=12)
    assert tau(bdata(c)).value == oracle(c)


@given(seeds)
def test_oracle_independent_of_choices(seed):
    c = gallery.random_complex(random.Random(seed), QQ, max_n=10)
    assert oracle(c, random.Random(seed + 1)) == oracle(c)


@given(seeds, st.data())
def test_basis_change_covariance(seed, data):
    # an arbitrary invertible change of basis in one degree scales the torsion
    # by det^{+1} in even degrees and det^{-1} in odd ones
    rng = random.Random(seed)
    c = gallery.random_complex(rng, QQ, max_n=8)
    if not c.n:
        return
    k = data.draw(st.sampled_from(sorted(set(c.degrees))))
    while True:
        Q = Matrix(QQ, [[rng.randint(-2, 2) for _ in c.positions(k)] for _ in c.positions(k)])
        if det(Q):
            break
    Qi = inverse(Q)
    dims = {j: len(c.positions(j)) for j in c.degree_range}
    diffs = {j: c.boundary_matrix(j, QQ) for j in c.degree_range}
    h = homology_enhancement(c)
    cycles = {j: [[v[s - 1] for s in c.positions(j)] for _, v in h.in_degree(j)] for j in c.degree_range}
    before = chain_torsion(diffs, dims, cycles, QQ)
    assert before == oracle(c)
    diffs[k] = diffs[k] @ Q
    if k + 1 in diffs:
        diffs[k + 1] = Qi @ diffs[k + 1]
    cycles[k] = [Qi.apply(z) for z in cycles[k]]
    after = chain_torsion(diffs, dims, cycles, QQ)
    assert after == before * det(Q) ** (1 if k % 2 == 0 else -1)


def test_mod_subgroup_examples():
    d = BData(2, (0, 1), ((2, 1, Fraction(6)),), QQ)
    neg = BData(2, (0, 1), ((2, 1, Fraction(-6)),), QQ)
    three = BData(2, (0, 1), ((2, 1, Fraction(3)),), QQ)
    assert bdata_equal_mod_subgroup(d, neg, subgroup(QQ, -1))
    assert not bdata_equal_mod_subgroup(d, neg, subgroup(QQ, 1))
    assert bdata_equal_mod_subgroup(d, three, subgroup(QQ, 2))
    other = BData(2, (0, 1), (), QQ)
    assert not bdata_equal_mod_subgroup(d, other, subgroup(QQ, 2))
    with pytest.raises(FieldMismatch):
        bdata_equal_mod_subgroup(d, BData(2, (0, 1), ((2, 1, GF(5).coerce(1)),), GF(5)),
                                 subgroup(QQ, 2))
