import random

import pytest
from hypothesis import given, strategies as st

from bruhat import gallery
from bruhat.complex import (
    BData,
    FilteredComplex,
    GradedUnitriangular,
    barannikov_basis,
    bdata,
    betti,
    change_basis,
    complex_from_bdata,
    homology_enhancement,
    induced_map_rook,
    pair_by_dims,
    poincare_dual,
    rel_dims,
    rook_matrices,
    slice_bdata,
    slice_complex,
    upside_down,
    validate,
)
from bruhat.enhanced_linear import RookMatrix
from bruhat.errors import IndexOutOfRange, InvalidComplex, NotChainMap
from bruhat.linalg import Matrix
from bruhat.scalars import GF, QQ, ZZ

from oracles import bdata_by_connecting_map, betti_by_rank

FIELDS = [QQ, GF(5), GF(2)]
seeds = st.integers(0, 2**32)
EIGHT_PAIRS = ((4, 1, 6), (5, 3, 3), (7, 6, 2), (8, 2, 4))


def random_complex(seed, field, max_n=10):
    return gallery.random_complex(random.Random(seed), field, max_n=max_n)


def perturb(c, seed):
    rng = random.Random(seed)
    return change_basis(c, gallery.random_graded_unitriangular(c.degrees, c.ring, rng))


# ---------------------------------------------------------------- validation

def test_validate_examples():
    assert validate(gallery.rp(2, QQ))
    bad = FilteredComplex(QQ, (0, 1, 2), {(1, 2): 1, (2, 3): 1})
    rep = validate(bad)
    assert not rep and "d^2" in rep.reason
    rep = validate(FilteredComplex(QQ, (0, 2), {(1, 2): 1}))
    assert not rep and "degree" in rep.reason
    rep = validate(FilteredComplex(QQ, (0, 1), {(2, 1): 1}))
    assert not rep


def test_bdata_rejects_invalid():
    with pytest.raises(InvalidComplex):
        bdata(FilteredComplex(QQ, (0, 1, 2), {(1, 2): 1, (2, 3): 1}))


# ---------------------------------------------------------------- B-data

def test_eight():
    d = bdata(gallery.eight())
    assert d.pairs == EIGHT_PAIRS
    assert d.homological == ()


def test_eight_perturbed_recovers_rook_differentials():
    c = gallery.eight()
    for seed in range(10):
        new, p = barannikov_basis(perturb(c, seed))
        assert new.boundary == c.boundary


def test_rp6():
    d = bdata(gallery.rp(6, QQ))
    assert d.pairs == ((3, 2, 2), (5, 4, 2), (7, 6, 2))
    assert d.homological == (1,)
    assert bdata(gallery.rp(6, GF(2))).homological == tuple(range(1, 8))


def test_rook_matrices_of_eight():
    R = rook_matrices(bdata(gallery.eight()))
    assert R[1] == RookMatrix(1, 4, ((1, 3, 6),))
    assert R[2] == RookMatrix(4, 3, ((1, 3, 4), (2, 1, 3), (4, 2, 2)))


def test_barannikov_basis_of_rook_complex_is_identity():
    c = gallery.eight()
    new, p = barannikov_basis(c)
    assert new.boundary == c.boundary
    assert p.matrix == Matrix.identity(QQ, 8)
    z = gallery.zero()
    assert barannikov_basis(z)[0].boundary == {}


def test_bdata_check():
    with pytest.raises(InvalidComplex):
        BData(2, (0, 2), ((2, 1, 1),)).check()
    with pytest.raises(InvalidComplex):
        BData(3, (0, 1, 1), ((2, 1, 1), (3, 1, 1))).check()


@given(seeds, st.sampled_from(FIELDS))
def test_basis_change_invariance(seed, f):
    c = random_complex(seed, f)
    assert bdata(perturb(c, seed + 1)) == bdata(c)


@given(seeds, st.sampled_from(FIELDS))
def test_barannikov_basis_gives_rook_complex(seed, f):
    c = random_complex(seed, f)
    new, p = barannikov_basis(c)
    d = bdata(c)
    assert new.boundary == complex_from_bdata(d, f).boundary
    assert change_basis(c, p).boundary == new.boundary
    # idempotent: reducing again changes nothing
    assert barannikov_basis(new)[0].boundary == new.boundary


@given(seeds, st.sampled_from(FIELDS))
def test_homological_count_is_betti(seed, f):
    c = random_complex(seed, f)
    d = bdata(c)
    ref = betti_by_rank(c)
    for k in c.degree_range:
        assert len(d.homological_in_degree(k)) == ref[k] == betti(c)[k]


@given(seeds, st.sampled_from([QQ, GF(5), ZZ]))
def test_connecting_map_oracle(seed, f):
    c = random_complex(seed, f)
    assert bdata(c) == bdata_by_connecting_map(c)


# ---------------------------------------------------------------- slices, duality, relative homology

def test_slice_examples():
    c = gallery.eight()
    d = bdata(c)
    assert slice_bdata(d, 0, 8) == d
    assert slice_complex(c, 0, 8).boundary == c.boundary
    s = slice_bdata(d, 2, 8)
    assert s.pairs == ((3, 1, 3), (5, 4, 2))
    assert s.homological == (2, 6)
    assert bdata(slice_complex(c, 2, 8)) == s
    assert slice_bdata(d, 3, 3).n == 0
    with pytest.raises(IndexOutOfRange):
        slice_complex(c, 5, 4)


@given(seeds, st.sampled_from([QQ, GF(5)]), st.data())
def test_slice_coherence(seed, f, data):
    c = random_complex(seed, f, max_n=8)
    l = data.draw(st.integers(0, c.n))
    m = data.draw(st.integers(l, c.n))
    assert bdata(slice_complex(c, l, m)) == slice_bdata(bdata(c), l, m)


def test_duality_examples():
    c = gallery.rp(6, QQ)
    dual = poincare_dual(c, 6)
    assert poincare_dual(dual, 6).boundary == c.boundary
    dd = bdata(dual)
    assert dd == upside_down(bdata(c), 6)
    assert all(v == 2 for _, _, v in dd.pairs)
    z = gallery.zero((0, 1, 3))
    zd = poincare_dual(z, 3)
    assert zd.degrees == (0, 2, 3)
    assert bdata(zd).homological == (1, 2, 3)


@given(seeds, st.sampled_from([QQ, GF(5)]))
def test_duality_law(seed, f):
    c = random_complex(seed, f)
    top = max(c.degrees, default=0)
    assert bdata(poincare_dual(c, top)) == upside_down(bdata(c), top)


def test_rel_dims_examples():
    c = gallery.eight()
    dims = rel_dims(c, 4, 1)
    assert pair_by_dims(dims)
    assert not pair_by_dims(rel_dims(c, 5, 2))
    z = gallery.zero((0, 1, 1, 2))
    assert not any(pair_by_dims(rel_dims(z, s, t)) for s in range(2, 5) for t in range(1, s))
    with pytest.raises(IndexOutOfRange):
        rel_dims(c, 1, 1)


@given(seeds, st.sampled_from([QQ, GF(3)]))
def test_rel_dims_criterion(seed, f):
    c = random_complex(seed, f, max_n=7)
    b = bdata(c).b
    for s in range(2, c.n + 1):
        for t in range(1, s):
            assert pair_by_dims(rel_dims(c, s, t)) == (b.get(s) == t)


# ---------------------------------------------------------------- homology and induced maps

def test_homology_enhancement_examples():
    z = gallery.zero((0, 1, 1))
    h = homology_enhancement(z)
    assert [s for s, _, _ in h.cycles] == [1, 2, 3]
    h = homology_enhancement(gallery.rp(6, QQ))
    assert [(s, k) for s, k, _ in h.cycles] == [(1, 0)]
    assert len(homology_enhancement(gallery.sphere(2, QQ)).cycles) == 2


@given(seeds, st.sampled_from([QQ, GF(5)]))
def test_homology_cycles_are_cycles(seed, f):
    c = random_complex(seed, f)
    D = c.full_matrix(f)
    for s, k, v in homology_enhancement(c).cycles:
        assert not any(D.apply(list(v)))
        assert v[s - 1] == f.one and not any(v[s:])


def test_induced_map_examples():
    c = gallery.eight()
    c = FilteredComplex(QQ, c.degrees, {(1, 4): 6, (3, 5): 3})
    maps = {k: Matrix.identity(QQ, len(c.positions(k))) for k in c.degree_range}
    out = induced_map_rook(c, c, maps)
    for k, r in out.items():
        assert r.hits == tuple((i, i, 1) for i in range(1, r.rows + 1))
    zero = induced_map_rook(c, c, {})
    assert all(r.hits == () for r in zero.values())

    circle = gallery.sphere(1, QQ)
    out = induced_map_rook(circle, circle, {0: Matrix(QQ, [[1]]), 1: Matrix(QQ, [[2]])})
    assert out[1].hits == ((1, 1, 2),)


def test_induced_map_rejects_non_chain_map():
    c = gallery.lens(3, QQ)
    with pytest.raises(NotChainMap):
        induced_map_rook(c, c, {2: Matrix(QQ, [[1]])})


def test_graded_unitriangular_rejects_mixing():
    with pytest.raises(InvalidComplex):
        GradedUnitriangular((0, 1), Matrix(QQ, [[1, 1], [0, 1]]))
