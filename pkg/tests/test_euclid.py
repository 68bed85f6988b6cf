import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from slstar.errors import NotCertified, NotCoprime, NotStarEuclidean, SymmetryViolation
from slstar.euclid import (
    certify_not_star_euclidean,
    check_coprime,
    counterexample_pair,
    derive_symmetry,
    divide,
    divide_char2_quat,
    divide_field_matrix,
    divide_iterated,
    divide_lift,
    divide_two_local,
    is_coprime,
    symmetric_count,
)
from slstar.experiments import random_valid_pair
from slstar.local import local_data
from slstar.rings import ring


# -- hypotheses -----------------------------------------------------------

def test_coprime_examples():
    A = ring("Mat(2,GF(2))")
    cert = check_coprime(A, A.one, A.zero)
    assert cert.check(A, A.one, A.zero)
    assert cert.x == A.one
    H = ring("SplitQuat(GF(3))")
    a, c = counterexample_pair(H)
    assert check_coprime(H, a, c).check(H, a, c)
    e = ((1, 0), (0, 0))
    with pytest.raises(NotCoprime):
        check_coprime(A, e, e)


def test_symmetry_examples():
    H = ring("SplitQuat(Z/(9))")
    a, c = counterexample_pair(H)
    assert H.mul(H.involute(a), c) == H.zero == H.mul(H.involute(c), a)
    assert derive_symmetry(H, a, c)
    A = ring("Mat(2,GF(3))")
    x = ((1, 2), (0, 1))
    assert derive_symmetry(A, x, x)
    assert not derive_symmetry(A, A.one, x)


# -- closed forms and algorithm examples ----------------------------------

def test_field_closed_forms():
    A = ring("Mat(2,GF(3))")
    step = divide_field_matrix(A, A.one, A.zero)
    assert (step.s, step.r) == (A.zero, A.one)
    step = divide_field_matrix(A, A.zero, A.one)
    assert (step.s, step.r) == (A.one, A.neg(A.one))
    # neither closed form applies: a rank-one pair with complementary supports
    a, c = ((0, 0), (0, 1)), ((1, 0), (0, 0))
    step = divide_field_matrix(A, a, c)
    assert step.check(A, a, c) and A.is_symmetric(step.s) and A.is_unit(step.r)


def test_two_local_examples():
    A = ring("Mat(2,Prod(GF(3),GF(3)))")
    I = A.one
    step = divide_two_local(A, I, A.zero)
    assert (step.s, step.r) == (A.zero, I)
    step = divide_two_local(A, A.zero, I)
    assert (step.s, step.r) == (I, A.neg(I))


def test_char2_quaternion_zero_numerator():
    H = ring("SplitQuat(GF(2))")
    step = divide_char2_quat(H, H.zero, H.one)
    assert step.s == H.one and step.r == H.one


def test_lift_unit_numerator():
    A = ring("Mat(2,Z/(9))")
    a = ((4, 3), (0, 7))
    c = ((3, 0), (0, 3))
    step = divide_lift(A, a, A.zero)
    assert (step.s, step.r) == (A.zero, a)
    assert divide(A, a, c).steps[0].s == A.zero


def test_counterexample_refused_and_certified():
    H = ring("SplitQuat(GF(3))")
    a, c = counterexample_pair(H)
    with pytest.raises(NotStarEuclidean) as info:
        divide(H, a, c)
    cert = info.value.certificate
    assert (cert.symmetric_count, cert.unit_remainders) == (3, 0)
    full = certify_not_star_euclidean(H, a, c)
    assert full.scalar_only and full.coprime.check(H, a, c)


def test_certificate_refuses_divisible_pair():
    A = ring("Mat(2,GF(2))")
    with pytest.raises(NotCertified):
        certify_not_star_euclidean(A, A.one, A.zero)


def test_hypothesis_violations():
    A = ring("Mat(2,GF(3))")
    with pytest.raises(SymmetryViolation):
        divide(A, A.one, ((1, 1), (0, 1)))
    e = ((1, 0), (0, 0))
    with pytest.raises(NotCoprime):
        divide(A, e, e)


def test_divide_iterated_replays():
    A = ring("Mat(2,GF(2))")
    a, c = random_valid_pair(A, random.Random(3), length=6)
    chain = divide_iterated(A, a, c)
    assert chain.verify() and chain.length >= 1


# -- exhaustive oracles ---------------------------------------------------

@pytest.mark.parametrize("desc", ["Mat(2,GF(2))", "SplitQuat(GF(2))"])
def test_divide_succeeds_exactly_on_valid_pairs(desc):
    A = ring(desc)
    els = A._element_list()
    for a, c in itertools.product(els, repeat=2):
        valid = derive_symmetry(A, a, c) and is_coprime(A, a, c)
        if valid:
            chain = divide(A, a, c)
            assert chain.length == 1 and chain.verify()
        else:
            with pytest.raises((SymmetryViolation, NotCoprime)):
                divide(A, a, c)


def test_odd_split_quaternions_dichotomy():
    """Over SplitQuat(GF(3)) divide and the certificate partition the valid pairs."""
    H = ring("SplitQuat(GF(3))")
    els = H._element_list()
    refused = solved = 0
    for a, c in itertools.product(els, repeat=2):
        if not (derive_symmetry(H, a, c) and is_coprime(H, a, c)):
            continue
        try:
            divide(H, a, c)
        except NotStarEuclidean:
            refused += 1
            assert certify_not_star_euclidean(H, a, c).unit_remainders == 0
            continue
        solved += 1
        with pytest.raises(NotCertified):
            certify_not_star_euclidean(H, a, c)
    assert refused > 0 and solved > 0


def test_symmetric_counts():
    assert symmetric_count(ring("SplitQuat(GF(3))")) == 3
    assert symmetric_count(ring("SplitQuat(Z/(9))")) == 9
    assert symmetric_count(ring("SplitQuat(GF(2))")) == 8
    assert symmetric_count(ring("Mat(2,GF(3))")) == 27


def test_char2_truncated_split_quaternions():
    """SplitQuat over the local ring F_2[t]/(t^2): every valid pair divides."""
    H = ring("SplitQuat(Trunc(GF(2),2))")
    rng = random.Random(5)
    els = H._element_list()
    seen = 0
    for _ in range(3000):
        a, c = rng.choice(els), rng.choice(els)
        if derive_symmetry(H, a, c) and is_coprime(H, a, c):
            assert divide(H, a, c).verify()
            seen += 1
    assert seen > 50


def test_split_quaternions_over_z4_are_not_covered():
    """Z/4 has characteristic 4: a valid pair exists with no unit remainder."""
    H = ring("SplitQuat(Z/(4))")
    a, c = ((3, 2), (0, 2)), ((3, 1), (0, 2))
    assert derive_symmetry(H, a, c) and is_coprime(H, a, c)
    sym = [s for s in H._element_list() if H.is_symmetric(s)]
    assert len(sym) == 16
    assert not any(H.is_unit(H.sub(a, H.mul(s, c))) for s in sym)
    with pytest.raises((NotStarEuclidean, SymmetryViolation)):
        divide_lift(H, a, c)
    with pytest.raises(NotStarEuclidean):
        divide(H, a, c)
    assert certify_not_star_euclidean(H, a, c).unit_remainders == 0


# -- properties -----------------------------------------------------------

EUCLID_RINGS = [
    "Mat(2,GF(2))", "Mat(3,GF(2))", "Mat(2,GF(5))", "Mat(2,GF(4))", "Mat(2,Z/(27))", "Mat(2,Z/(8))",
    "Mat(2,Trunc(GF(3),2))", "Mat(2,Prod(GF(3),GF(3)))", "Mat(2,Prod(Z/(9),Z/(9)))",
    "Mat(2,Q)", "Mat(2,Quad(Q,-1))", "Mat(2,Prod(Q,Q))", "Mat(2,Quat)",
    "SplitQuat(GF(4))", "SplitQuat(GF(2)(t))", "Mat(2,SplitQuat(GF(2)))",
]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(EUCLID_RINGS), st.integers(0, 2**32))
def test_divide_verifies_on_random_valid_pairs(desc, seed):
    A = ring(desc)
    a, c = random_valid_pair(A, random.Random(seed))
    chain = divide(A, a, c, seed)
    assert chain.length == 1
    st_ = chain.steps[0]
    assert A.is_symmetric(st_.s)
    assert A.add(A.mul(st_.s, c), st_.r) == a
    assert A.is_unit(st_.r)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["Mat(2,Z/(9))", "Mat(2,Z/(8))", "Mat(2,Prod(Z/(4),Z/(4)))", "Mat(2,Trunc(GF(2),3))"]),
       st.integers(0, 2**32))
def test_lifted_steps_descend(desc, seed):
    A = ring(desc)
    data = local_data(A)
    Ab = data.residue
    a, c = random_valid_pair(A, random.Random(seed))
    step = divide_lift(A, a, c, seed)
    sb = data.project(step.s)
    assert Ab.is_symmetric(sb)
    assert Ab.is_unit(Ab.sub(data.project(a), Ab.mul(sb, data.project(c))))
