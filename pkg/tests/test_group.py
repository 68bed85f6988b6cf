import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from slstar.errors import NoUnitEntry, NotGLStar, NotSLStar, NotStarEuclidean, NotSymmetric, NotUnit, SearchExhausted
from slstar.group import (
    BruhatWord,
    bruhat_h,
    bruhat_u,
    bruhat_w,
    closure_bfs,
    det_star,
    enumerate_sl_star,
    factor,
    factor_path,
    factor_unit_corner,
    find_isometry_violation,
    gl2loc_iso,
    group_inv,
    group_mul,
    hermitian_check,
    identity,
    is_sl_star,
    m2,
    make_nonunit_example,
    multiplier,
    sl_star_violation,
)
from slstar.rings import ring


def random_word(A, rng, length=8):
    units, sym = A.units(), A.symmetric_elements()
    tokens = []
    for _ in range(length):
        kind = rng.choice("HUW")
        if kind == "H":
            tokens.append(("H", rng.choice(units)))
        elif kind == "U":
            tokens.append(("U", rng.choice(sym)))
        else:
            tokens.append((rng.choice(["W", "Winv"]), None))
    return BruhatWord(tuple(tokens))


# -- worked values ------------------------------------------------------

def test_det_star_examples():
    A = ring("Mat(2,GF(3))")
    assert det_star(A, identity(A)) == A.one
    assert det_star(A, bruhat_w(A)) == A.one
    for a in A.units()[:20]:
        assert det_star(A, bruhat_h(A, a)) == A.one


def test_membership_examples():
    A = ring("Mat(2,GF(3))")
    b = ((1, 2), (2, 0))
    assert is_sl_star(A, bruhat_u(A, b))
    nb = ((1, 2), (0, 0))
    assert sl_star_violation(A, ((A.one, nb), (A.zero, A.one))) == "ab* symmetric"
    with pytest.raises(NotSymmetric):
        bruhat_u(A, nb)
    with pytest.raises(NotUnit):
        bruhat_h(A, ((1, 0), (0, 0)))


def test_random_bruhat_products_are_members():
    A = ring("Mat(2,GF(2))")
    rng = random.Random(0)
    for _ in range(50):
        assert is_sl_star(A, random_word(A, rng).evaluate(A))


def test_multiplier_examples():
    F = ring("GF(5)")
    assert multiplier(F, bruhat_w(F)) == F.one
    z = 3
    assert multiplier(F, ((z, 0), (0, 1))) == z
    with pytest.raises(NotGLStar):
        multiplier(F, ((1, 1), (0, 0)))


def test_generator_examples():
    A = ring("Mat(2,GF(3))")
    M = m2(A)
    assert bruhat_h(A, A.one) == M.one == bruhat_u(A, A.zero)
    w = bruhat_w(A)
    w2 = M.mul(w, w)
    assert w2 == M.neg(M.one)
    assert M.mul(w2, w2) == M.one
    b = ((2, 1), (1, 1))
    assert group_inv(A, bruhat_u(A, b)) == bruhat_u(A, A.neg(b))


def test_word_serialization_roundtrip():
    A = ring("Mat(2,GF(2))")
    text = "U[[1,0],[0,1]] . W . H[[1,1],[0,1]] . Winv"
    word = BruhatWord.parse(A, text)
    assert word.serialize(A) == text
    assert word.well_formed(A)


# -- factorisation ---------------------------------------------------------

def test_factor_identity_and_unipotent():
    A = ring("Mat(2,GF(3))")
    assert factor_unit_corner(A, identity(A)).evaluate(A) == identity(A)
    u = bruhat_u(A, ((0, 1), (1, 0)))
    assert factor_unit_corner(A, u).evaluate(A) == u


def test_nonunit_example_factors_via_division():
    for desc in ("Mat(2,GF(2))", "Mat(2,GF(3))"):
        A = ring(desc)
        g = make_nonunit_example(A).evaluate(A)
        assert factor_path(A, g) == "divide"
        with pytest.raises(NoUnitEntry):
            factor_unit_corner(A, g)
        word = factor(A, g)
        assert word.evaluate(A) == g and word.well_formed(A)


def test_nonunit_example_impossible_for_n1():
    with pytest.raises(SearchExhausted):
        make_nonunit_example(ring("GF(3)"))


def test_factor_refuses_non_members():
    A = ring("Mat(2,GF(3))")
    with pytest.raises(NotSLStar):
        factor(A, ((A.one, A.one), (A.zero, A.zero)))


def test_factor_outside_closure_over_odd_split_quaternions():
    H = ring("SplitQuat(GF(3))")
    closure = closure_bfs(H).elements
    outside = [g for g in enumerate_sl_star(H) if g not in closure]
    assert outside
    with pytest.raises(NotStarEuclidean):
        for g in outside:
            factor(H, g)


# -- finite groups ---------------------------------------------------------

def test_classical_group_orders():
    assert len(enumerate_sl_star("GF(2)")) == 6
    assert len(enumerate_sl_star("GF(3)")) == 24


@pytest.mark.parametrize("desc", ["GF(3)", "GF(4)", "Z/(4)", "SplitQuat(GF(2))", "Mat(1,Prod(GF(3),GF(3)))"])
def test_closure_equals_group(desc):
    G = enumerate_sl_star(desc)
    assert closure_bfs(desc).elements == frozenset(G)


def test_closure_strict_for_odd_split_quaternions():
    H = ring("SplitQuat(GF(3))")
    G = frozenset(enumerate_sl_star(H))
    C = closure_bfs(H).elements
    assert C < G


@pytest.mark.parametrize("desc", ["GF(3)", "GF(5)", "GF(7)"])
def test_two_unit_entries_when_n_is_one(desc):
    F = ring(desc)
    for g in enumerate_sl_star(F):
        assert sum(F.is_unit(x) for row in g for x in row) >= 2


@pytest.mark.parametrize("desc", ["GF(3)", "Z/(4)", "SplitQuat(GF(2))", "Mat(1,Prod(GF(3),GF(3)))"])
def test_relation_suite_on_enumerated_groups(desc):
    A = ring(desc)
    cols = list(itertools.product(A._element_list(), repeat=2))
    rng = random.Random(1)
    for g in enumerate_sl_star(A):
        assert sl_star_violation(A, g) is None
        assert multiplier(A, g) == A.one
        if A.size() <= 9:
            assert all(hermitian_check(A, g, x, y) for x, y in itertools.product(cols, repeat=2))
        else:
            assert find_isometry_violation(A, g, rng, samples=1000) is None


@pytest.mark.parametrize("desc", ["GF(3)", "SplitQuat(GF(2))", "Mat(2,GF(2))"])
def test_factor_soundness_on_whole_group(desc):
    A = ring(desc)
    G = enumerate_sl_star(A) if A.size() < 100 else [make_nonunit_example(A).evaluate(A)]
    for g in G:
        assert factor(A, g).evaluate(A) == g


def test_hermitian_examples():
    F = ring("GF(3)")
    w = bruhat_w(F)
    for x in itertools.product(range(3), repeat=2):
        for y in itertools.product(range(3), repeat=2):
            assert hermitian_check(F, w, x, y)
            assert hermitian_check(F, identity(F), x, y)
    bad = ((1, 1), (0, 2))
    assert find_isometry_violation(F, bad, random.Random(0)) is not None


# -- two-local isomorphism ---------------------------------------------------

def _gl2(p):
    return [g for g in itertools.product(range(p), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % p]


def _blocks(g):
    return ((((g[0],),), ((g[1],),)), (((g[2],),), ((g[3],),)))


def test_gl2loc_identity_and_bijection():
    A = ring("Mat(1,Prod(GF(3),GF(3)))")
    assert gl2loc_iso(A, _blocks((1, 0, 0, 1))) == identity(A)
    image = {gl2loc_iso(A, _blocks(g)) for g in _gl2(3)}
    assert len(image) == 48
    assert image == set(enumerate_sl_star(A))


def test_gl2loc_homomorphism():
    A = ring("Mat(1,Prod(GF(3),GF(3)))")
    rng = random.Random(2)
    gl = _gl2(3)
    for _ in range(100):
        x, y = rng.choice(gl), rng.choice(gl)
        xy = ((x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
              (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3)
        lhs = gl2loc_iso(A, _blocks(xy))
        assert lhs == group_mul(A, gl2loc_iso(A, _blocks(x)), gl2loc_iso(A, _blocks(y)))


def test_gl2loc_over_matrix_blocks_is_injective():
    A = ring("Mat(2,Prod(GF(2),GF(2)))")
    F = ring("Mat(2,GF(2))")
    rng = random.Random(3)
    seen = {}
    for _ in range(300):
        g1 = ((rng.choice(F._element_list()), rng.choice(F._element_list())),
              (rng.choice(F._element_list()), rng.choice(F._element_list())))
        try:
            g = gl2loc_iso(A, g1)
        except NotUnit:
            continue
        assert is_sl_star(A, g)
        assert seen.setdefault(g, g1) == g1
    assert len(seen) > 50


# -- properties -------------------------------------------------------------

GEN_RINGS = ["GF(3)", "Z/(9)", "Prod(GF(3),GF(3))", "Mat(2,GF(2))", "SplitQuat(GF(3))", "Quad(GF(3))"]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(GEN_RINGS), st.integers(0, 2**32))
def test_generator_algebra(desc, seed):
    A = ring(desc)
    M = m2(A)
    rng = random.Random(seed)
    units, sym = A.units(), A.symmetric_elements()
    a, a2 = rng.choice(units), rng.choice(units)
    b, b2 = rng.choice(sym), rng.choice(sym)
    assert M.mul(bruhat_h(A, a), bruhat_h(A, a2)) == bruhat_h(A, A.mul(a2, a))
    assert M.mul(bruhat_u(A, b), bruhat_u(A, b2)) == bruhat_u(A, A.add(b, b2))
    conj = M.mul(M.mul(bruhat_h(A, a), bruhat_u(A, b)), group_inv(A, bruhat_h(A, a)))
    assert conj == bruhat_u(A, A.mul(A.mul(A.involute(a), b), a))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(GEN_RINGS), st.integers(0, 2**32))
def test_words_evaluate_into_group_and_invert(desc, seed):
    A = ring(desc)
    g = random_word(A, random.Random(seed)).evaluate(A)
    assert is_sl_star(A, g)
    assert group_mul(A, g, group_inv(A, g)) == identity(A)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Mat(2,GF(2))", "Mat(2,GF(3))", "Mat(2,Z/(9))", "Mat(2,Prod(GF(3),GF(3)))",
                        "SplitQuat(GF(4))", "Mat(3,GF(2))"]), st.integers(0, 2**32))
def test_factor_roundtrip(desc, seed):
    A = ring(desc)
    rng = random.Random(seed)
    word = BruhatWord((("U", A.zero),))
    for _ in range(3):
        b1, b2 = (A.random(rng) for _ in range(2))
        b1 = A.add(b1, A.involute(b1))
        b2 = A.add(b2, A.involute(b2))
        word = word + BruhatWord((("U", b1), ("W", None), ("U", b2), ("Winv", None)))
    g = word.evaluate(A)
    out = factor(A, g, seed)
    assert out.evaluate(A) == g and out.well_formed(A)
