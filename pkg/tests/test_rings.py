import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slstar.errors import InfiniteRing, NotUnit, ParseError
from slstar.rings import (
    enumerate_ring,
    involute,
    is_central_invertible_symmetric,
    is_symmetric,
    ring,
    symmetric_elements,
    try_invert,
)
from slstar.selftest import ring_selftest


def el(desc, text):
    return ring(desc)(text)


# -- worked values ------------------------------------------------------

def test_add_examples():
    assert el("GF(3)", "2") + el("GF(3)", "2") == el("GF(3)", "1")
    assert el("Prod(GF(2),GF(2))", "(1|0)") + el("Prod(GF(2),GF(2))", "(0|1)") == el("Prod(GF(2),GF(2))", "(1|1)")
    assert el("Quat", "1+i") + el("Quat", "1-i") == el("Quat", "2")


def test_mul_examples():
    assert el("Quat", "i") * el("Quat", "j") == el("Quat", "k")
    assert el("Quat", "j") * el("Quat", "i") == el("Quat", "-k")
    t = el("Trunc(GF(2),2)", "t")
    assert t * t == el("Trunc(GF(2),2)", "0")
    x = el("Mat(2,Z/(9))", "[[5,3],[0,1]]")
    assert el("Mat(2,Z/(9))", "[[1,0],[0,1]]") * x == x


def test_involution_examples():
    assert involute(el("Prod(GF(7),GF(7))", "(3|5)")) == el("Prod(GF(7),GF(7))", "(5|3)")
    assert involute(el("Quat", "1+2*i+3*j")) == el("Quat", "1-2*i-3*j")
    # J-involution over a trivially involuted base in characteristic 2
    H = ring("SplitQuat(GF(2))")
    assert H.involute(((1, 1), (0, 0))) == ((0, 1), (0, 1))


def test_split_quaternion_involution_is_adjugate():
    # [[a,b],[c,d]]* = [[d,-b],[-c,a]] for a trivial base involution
    H = ring("SplitQuat(GF(5))")
    assert H.involute(((1, 2), (3, 4))) == ((4, 3), (2, 1))


def test_symmetry_examples():
    H9 = ring("SplitQuat(Z/(9))")
    assert H9.is_symmetric(((4, 0), (0, 4)))
    H2 = ring("SplitQuat(GF(2))")
    assert H2.is_symmetric(((1, 1), (0, 1)))
    assert not is_symmetric(el("Quat", "i"))


def test_try_invert_examples():
    with pytest.raises(NotUnit):
        try_invert(el("Z/(9)", "3"))
    assert try_invert(el("Quat", "1+i")) == el("Quat", "1/2-1/2*i")
    u = el("Mat(2,GF(2))", "[[1,1],[0,1]]")
    assert try_invert(u) == u


def test_enumeration_sizes():
    assert len(enumerate_ring("GF(2)")) == 2
    assert len(enumerate_ring("Mat(2,GF(2))")) == 16
    assert len(enumerate_ring("Prod(GF(3),GF(3))")) == 9
    with pytest.raises(InfiniteRing):
        enumerate_ring("Q")


def test_symmetric_element_counts():
    sym3 = symmetric_elements("SplitQuat(GF(3))")
    H = ring("SplitQuat(GF(3))")
    assert sorted(x.value for x in sym3) == sorted(H.scalar(a) for a in range(3))
    sym2 = symmetric_elements("SplitQuat(GF(2))")
    assert len(sym2) == 8
    assert all(x.value[0][0] == x.value[1][1] for x in sym2)
    # F_4 with the Frobenius involution: fixed field F_2
    assert len(symmetric_elements("Quad(GF(2))")) == 2


def test_central_invertible_symmetric():
    assert is_central_invertible_symmetric(el("Q", "1"))
    assert is_central_invertible_symmetric(el("Mat(2,GF(5))", "[[2,0],[0,2]]"))
    assert not is_central_invertible_symmetric(el("Quat", "i"))
    assert not is_central_invertible_symmetric(el("Mat(2,GF(5))", "[[2,0],[0,1]]"))


def test_canonical_representation():
    assert el("Z/(9)", "-1").value == 8
    assert el("Q", "6/4").value == Fraction(3, 2)
    assert el("Q", "-3/6").value == Fraction(-1, 2)


@pytest.mark.parametrize("bad", ["Mat(2,GF(3)", "GF(6)", "Z/(12)", "Mat(0,GF(2))", "Foo(3)", "Prod(GF(2),GF(2),xx)"])
def test_malformed_descriptors_report_position(bad):
    with pytest.raises(ParseError) as info:
        ring(bad)
    assert info.value.position is not None


def test_descriptor_roundtrip():
    for d in ["GF(2)", "GF(4)", "Z/(9)", "Trunc(GF(2),3)", "Quat", "Quad(Q,-1)", "Prod(Z/(4),Z/(4))",
              "Mat(2,GF(3))", "SplitQuat(GF(2))", "GF(2)(t)", "GF(3)[t]", "Mat(2,SplitQuat(GF(2)))"]:
        R = ring(d)
        assert ring(R.descriptor()) == R


def test_equal_descriptors_compare_equal():
    assert ring("Mat(2,GF(3))") == ring("Mat(2, GF(3))")
    assert hash(ring("GF(9)")) == hash(ring("GF(9)"))


# -- invariant suite ------------------------------------------------------

@pytest.mark.parametrize("desc", [
    "GF(2)", "GF(4)", "GF(9)", "Z/(8)", "Z/(9)", "Trunc(GF(2),3)", "Prod(GF(3),GF(3))",
    "Prod(Z/(4),Z/(4))", "Mat(2,GF(2))", "SplitQuat(GF(2))", "Quad(GF(3))",
])
def test_selftest_small_rings_exhaustive(desc):
    res = ring_selftest(desc)
    assert res.mode == "exhaustive"
    assert res.passed, res.records()


@pytest.mark.parametrize("desc", [
    "SplitQuat(GF(3))", "Mat(2,Z/(9))", "Mat(2,Prod(Z/(4),Z/(4)))", "Q", "Quat", "Quad(Q,-1)",
    "GF(2)(t)", "GF(3)[t]", "Mat(2,Quat)", "SplitQuat(Q)", "Mat(2,SplitQuat(GF(2)))",
])
def test_selftest_sampled(desc):
    res = ring_selftest(desc, samples=300, seed=1)
    assert res.mode == "sampled"
    assert res.passed, res.records()


def test_selftest_unit_soundness_is_exhaustive_on_small_rings():
    res = ring_selftest("Mat(2,GF(2))")
    n, fails = res.checks["unit soundness"]
    assert (n, fails) == (16, 0)


# -- properties -----------------------------------------------------------

RING_CHOICES = ["Z/(9)", "GF(4)", "Prod(Z/(4),Z/(4))", "Mat(2,GF(3))", "SplitQuat(GF(5))", "Quat",
                "Quad(Q,-2)", "Mat(2,Prod(GF(2),GF(2)))", "Mat(3,Z/(4))"]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(RING_CHOICES), st.integers(0, 2**32))
def test_anti_automorphism_property(desc, seed):
    R = ring(desc)
    rng = random.Random(seed)
    x, y = R.random(rng), R.random(rng)
    assert R.involute(R.mul(x, y)) == R.mul(R.involute(y), R.involute(x))
    assert R.involute(R.involute(x)) == x
    assert R.involute(R.add(x, y)) == R.add(R.involute(x), R.involute(y))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(RING_CHOICES), st.integers(0, 2**32))
def test_unit_roundtrip_property(desc, seed):
    R = ring(desc)
    x = R.random(random.Random(seed))
    try:
        y = R.inverse(x)
    except NotUnit:
        return
    assert R.mul(x, y) == R.one == R.mul(y, x)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(RING_CHOICES), st.integers(0, 2**32))
def test_format_parse_roundtrip(desc, seed):
    R = ring(desc)
    x = R.random(random.Random(seed))
    assert R.parse(R.format(x)) == x


@settings(max_examples=100, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_quaternion_norm_multiplicative(a, b, c, d, e, f, g, h):
    Q = ring("Quat")
    p = tuple(Fraction(v) for v in (a, b, c, d))
    q = tuple(Fraction(v) for v in (e, f, g, h))
    assert Q.nrd(Q.mul(p, q)) == Q.nrd(p) * Q.nrd(q)


def test_quaternion_symmetric_elements_are_rational():
    Q = ring("Quat")
    grid = range(-2, 3)
    for a in grid:
        for b in grid:
            for c in grid:
                x = tuple(Fraction(v) for v in (1, a, b, c))
                assert Q.is_symmetric(x) == (a == b == c == 0)
