import itertools

import pytest

from slstar.errors import ParseError
from slstar.local import (
    NOT_LOCAL,
    ONE_LOCAL,
    TWO_LOCAL,
    brute_force_classify,
    brute_force_in_radical,
    brute_force_radical,
    classify_star_local,
    decompose,
    is_unit_via_reduction,
    jacobson_membership,
    local_data,
    project,
    representatives,
    section,
)
from slstar.rings import ring

SMALL_LOCAL = ["Z/(9)", "Z/(8)", "Z/(4)", "Trunc(GF(2),3)", "Trunc(GF(3),2)", "GF(4)", "GF(5)",
               "Quad(GF(3))", "Prod(Z/(4),Z/(4))", "Prod(GF(3),GF(3))", "Prod(Trunc(GF(2),2),Trunc(GF(2),2))"]


def el(desc, text):
    return ring(desc)(text)


# -- worked values ------------------------------------------------------

def test_radical_membership_examples():
    assert jacobson_membership(el("Z/(9)", "3"))
    assert sorted(brute_force_radical(ring("Z/(9)"))) == [0, 3, 6]
    assert not jacobson_membership(el("Prod(GF(3),GF(3))", "(0|2)"))
    assert not jacobson_membership(el("Mat(2,Z/(4))", "[[0,1],[0,0]]"))
    assert not brute_force_in_radical(ring("Mat(2,Z/(4))"), ((0, 1), (0, 0)))


def test_classification_examples():
    c = classify_star_local("Z/(9)")
    assert (c.kind, c.ideal_p) == (ONE_LOCAL, "(3)")
    c = classify_star_local("Prod(Z/(4),Z/(4))")
    assert c.kind == TWO_LOCAL
    assert (c.ideal_p, c.ideal_pstar) == ("(2) x Z/(4)", "Z/(4) x (2)")
    c = classify_star_local("GF(4)")
    assert (c.kind, c.ideal_p) == (ONE_LOCAL, "0")
    assert classify_star_local("Z").kind == NOT_LOCAL
    assert classify_star_local("Prod(Z,Z)").kind == NOT_LOCAL


def test_non_local_kinds_are_not_constructible():
    with pytest.raises(ParseError):
        ring("Prod(GF(2),GF(2),GF(2))")
    with pytest.raises(ParseError):
        ring("Z/(6)")


def test_projection_examples():
    assert project(el("Z/(9)", "5")) == el("GF(3)", "2")
    assert project(el("Prod(Z/(4),Z/(4))", "(3|1)")) == el("Prod(GF(2),GF(2))", "(1|1)")
    assert project(el("Mat(2,Z/(9))", "[[5,3],[0,1]]")) == el("Mat(2,GF(3))", "[[2,0],[0,1]]")


def test_section_examples():
    assert section(el("GF(3)", "2"), "Z/(9)") == el("Z/(9)", "2")
    lifted = section(el("Prod(GF(2),GF(2))", "(1|1)"), "Prod(Z/(4),Z/(4))")
    assert lifted == el("Prod(Z/(4),Z/(4))", "(1|1)")
    assert lifted.is_symmetric() and lifted.is_unit()


def test_decompose_examples():
    assert decompose(el("Z/(9)", "5")) == (el("Z/(9)", "2"), el("Z/(9)", "3"))
    assert decompose(el("Z/(9)", "2")) == (el("Z/(9)", "2"), el("Z/(9)", "0"))


def test_unit_via_reduction_examples():
    assert is_unit_via_reduction(el("Z/(9)", "4"))
    assert not is_unit_via_reduction(el("Prod(Z/(4),Z/(4))", "(2|1)"))
    m = el("Mat(2,Z/(4))", "[[1,1],[1,0]]")
    assert is_unit_via_reduction(m) and m.is_unit()


# -- invariants, exhaustive -----------------------------------------------

@pytest.mark.parametrize("desc", SMALL_LOCAL)
def test_units_are_complement_of_maximal_ideals(desc):
    R = ring(desc)
    data = local_data(R)
    for x in R._element_list():
        assert R.is_unit(x) == (not data.in_p(x) and not data.in_pstar(x))


@pytest.mark.parametrize("desc", SMALL_LOCAL)
def test_one_plus_radical_is_unit(desc):
    R = ring(desc)
    data = local_data(R)
    rad = [x for x in R._element_list() if data.in_radical(x)]
    assert sorted(rad) == sorted(brute_force_radical(R))
    assert all(R.is_unit(R.add(R.one, x)) for x in rad)


@pytest.mark.parametrize("desc", SMALL_LOCAL + ["Mat(2,Z/(4))", "Mat(2,Prod(GF(2),GF(2)))"])
def test_projection_and_section_commute_with_involution(desc):
    R = ring(desc)
    data = local_data(R)
    Rb = data.residue
    for x in R._element_list():
        assert data.project(R.involute(x)) == Rb.involute(data.project(x))
    for y in Rb._element_list():
        assert data.section(Rb.involute(y)) == R.involute(data.section(y))
        assert data.project(data.section(y)) == y


@pytest.mark.parametrize("desc", SMALL_LOCAL)
def test_decompose_is_a_bijection(desc):
    R = ring(desc)
    data = local_data(R)
    reps = set(representatives(desc))
    rad = {x for x in R._element_list() if data.in_radical(x)}
    image = set()
    for x in R._element_list():
        s, j = data.decompose(x)
        assert s in reps and j in rad and R.add(s, j) == x
        image.add((s, j))
    assert len(image) == len(reps) * len(rad) == R.size()


@pytest.mark.parametrize("desc", SMALL_LOCAL + ["Mat(2,GF(2))", "SplitQuat(GF(3))"])
def test_dedekind_finite(desc):
    R = ring(desc)
    els = R._element_list()
    for x, y in itertools.product(els, repeat=2):
        if R.mul(x, y) == R.one:
            assert R.mul(y, x) == R.one


@pytest.mark.parametrize("desc", SMALL_LOCAL + ["Mat(2,Z/(4))", "Mat(2,Prod(GF(2),GF(2)))", "Mat(2,Z/(9))"])
def test_unit_via_reduction_matches_inversion(desc):
    R = ring(desc)
    data = local_data(R)
    for x in R._element_list():
        assert data.is_unit(x) == R.is_unit(x)


@pytest.mark.parametrize("desc", SMALL_LOCAL + ["Prod(Prod(GF(2),GF(2)),Prod(GF(2),GF(2)))", "Prod(GF(2),GF(2),star)"])
def test_brute_force_classification_agrees(desc):
    R = ring(desc)
    assert brute_force_classify(R) == classify_star_local(R).kind


def test_symmetric_parts_stay_symmetric_under_decompose():
    A = ring("Mat(2,Prod(Z/(4),Z/(4)))")
    data = local_data(A)
    for h in A.symmetric_elements()[:4000]:
        s, j = data.decompose(h)
        assert A.is_symmetric(s) and A.is_symmetric(j)
