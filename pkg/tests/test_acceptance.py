"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The canned experiments are run once per session and shared between the
criteria they cover.
"""
import functools

import pytest

from slstar.experiments import DEFAULT_SEED, run_experiment
from slstar.report import verify_digest


@functools.lru_cache(maxsize=None)
def experiment(name):
    return run_experiment(name, DEFAULT_SEED)


def records(name):
    return dict(experiment(name).records)


@pytest.fixture
def verdict(capsys):
    def check(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}{' (' + detail + ')' if detail else ''}")
        assert ok, detail or title
    return check


def sp4(q):
    return q ** 4 * (q ** 2 - 1) * (q ** 4 - 1)


def gl4(q):
    return (q ** 4 - 1) * (q ** 4 - q) * (q ** 4 - q ** 2) * (q ** 4 - q ** 3)


# valid pairs = |SL_*(2, A)| / |A^sym|, the group being Sp(4) or GL(4) here
LOCAL_PAIR_COUNTS = {
    "Mat(2,GF(2))": sp4(2) // 2 ** 3,
    "Mat(2,GF(3))": sp4(3) // 3 ** 3,
    "Mat(2,GF(4))": sp4(4) // 4 ** 3,
    "Mat(2,Z/(4))": sp4(2) * 2 ** 10 // 4 ** 3,
    "Mat(2,Z/(9))": sp4(3) * 3 ** 10 // 9 ** 3,
    "Mat(2,Prod(GF(3),GF(3)))": gl4(3) // 3 ** 4,
    "Mat(2,Prod(Z/(4),Z/(4)))": gl4(2) * 2 ** 16 // 4 ** 4,
}


def test_criterion_1_star_local_euclidean(verdict):
    rep = experiment("star-local-euclid")
    recs = records("star-local-euclid")
    bad = []
    for d, expected in LOCAL_PAIR_COUNTS.items():
        pairs, ok = int(recs[f"{d}.pairs"]), int(recs[f"{d}.verified"])
        if not (pairs == expected == ok and recs[f"{d}.failures"] == "0"):
            bad.append(f"{d}: {ok}/{pairs} of {expected}")
        if f"{d}.sample_checked" in recs and recs[f"{d}.sample_checked"] != recs[f"{d}.sample_agree"]:
            bad.append(f"{d}: lifted solutions disagree with divide")
    total = sum(LOCAL_PAIR_COUNTS.values())
    verdict(1, "every valid pair over the seven *-local matrix rings divides in one step",
            rep.verdict == "pass" and not bad, "; ".join(bad) or f"{total} pairs")


def test_criterion_2_counterexample(verdict):
    recs = records("counterexample-char-odd")
    bad = []
    for d, size in (("SplitQuat(GF(3))", 3), ("SplitQuat(GF(5))", 5), ("SplitQuat(Z/(9))", 9)):
        if recs[f"{d}.unit_remainders"] != "0":
            bad.append(f"{d}: unit remainder found")
        if int(recs[f"{d}.symmetric_count"]) != size or recs[f"{d}.symmetric_are_scalars"] != "true":
            bad.append(f"{d}: symmetric elements are not the {size} scalars")
    verdict(2, "the odd split-quaternion pair admits no unit remainder",
            experiment("counterexample-char-odd").verdict == "pass" and not bad, "; ".join(bad))


def test_criterion_3_char2_quaternions(verdict):
    recs = records("char2-quat-euclid")
    bad = []
    for d, expected in (("SplitQuat(GF(2))", sp4(2) // 8), ("SplitQuat(GF(4))", sp4(4) // 64)):
        if not (int(recs[f"{d}.pairs"]) == int(recs[f"{d}.verified"]) == expected):
            bad.append(f"{d}: {recs[f'{d}.verified']}/{recs[f'{d}.pairs']}")
        if recs[f"{d}.templates_only"] != "true":
            bad.append(f"{d}: a non-template method was needed")
    m = "Mat(2,SplitQuat(GF(2)))"
    if not (recs[f"{m}.pairs"] == recs[f"{m}.verified"] == str(3 * 5 * 9 * 17)):
        bad.append(f"{m}: {recs[f'{m}.verified']}/{recs[f'{m}.pairs']}")
    verdict(3, "characteristic-2 split quaternions divide in one step with the template shapes",
            experiment("char2-quat-euclid").verdict == "pass" and not bad, "; ".join(bad))


def test_criterion_4_closure_dichotomy(verdict):
    eq = records("bruhat-closure-char2")
    bad = [d for d in ("Mat(2,GF(2))", "Mat(1,GF(2))", "Mat(1,GF(3))", "Mat(1,GF(5))", "SplitQuat(GF(2))")
           if eq[f"{d}.equal"] != "true"]
    orders = {"Mat(1,GF(2))": 6, "Mat(1,GF(3))": 24, "Mat(1,GF(5))": 120, "Mat(2,GF(2))": sp4(2)}
    bad += [d for d, n in orders.items() if int(eq[f"{d}.group_size"]) != n]
    st = records("bruhat-closure-char3")
    strict = st["strict_subset"] == "true" and "index" in st
    verdict(4, "Bruhat closure equals SL_* in characteristic 2 and is a proper subgroup over SplitQuat(GF(3))",
            not bad and strict, f"index {st.get('index')}" + (f"; {bad}" if bad else ""))


def test_criterion_5_factorisation(verdict):
    recs = records("bruhat-closure-char2")
    bad = []
    for d in ("Mat(2,GF(2))", "Mat(1,GF(2))", "SplitQuat(GF(2))"):
        done, total = recs[f"{d}.factored"].split("/")
        if done != total:
            bad.append(f"{d}: {done}/{total}")
    via_divide = recs["nonunit.path"] == "divide" and int(recs["Mat(2,GF(2)).path[divide]"]) > 0
    verdict(5, "every characteristic-2 group element factors into Bruhat words",
            not bad and via_divide, "; ".join(bad) or f"{recs['Mat(2,GF(2)).path[divide]']} via divide")


def test_criterion_6_section_lift(verdict):
    recs = records("star-local-euclid")
    keys = [k for k in recs if k.startswith("lift.")]
    bad = [k for k in keys if k.endswith((".section", ".units", ".symmetry")) and recs[k] != "true"]
    for k in keys:
        if k.endswith(".descends"):
            good, total = recs[k].split("/")
            if good != total:
                bad.append(k)
    covered = {"Z/(9)", "Mat(2,Z/(9))", "Prod(Z/(4),Z/(4))", "Mat(2,Prod(Z/(4),Z/(4)))"}
    seen = {k.split(".")[1] for k in keys}
    verdict(6, "section, projection and lifted division are coherent",
            not bad and covered <= seen, "; ".join(bad))


def test_criterion_7_gl_criterion(verdict):
    recs = records("gl-criterion")
    bad = []
    for d, n, units in (("Mat(2,Prod(GF(2),GF(2)))", 256, 36), ("Mat(2,Z/(4))", 256, 96)):
        if recs[f"{d}.agree"] != f"{n}/{n}" or recs[f"{d}.mode"] != "exhaustive":
            bad.append(d)
        if int(recs[f"{d}.invertible"]) != units:
            bad.append(f"{d}: {recs[f'{d}.invertible']} invertible, expected {units}")
    verdict(7, "the three invertibility tests agree", not bad, "; ".join(bad))


def test_criterion_8_adelic(verdict):
    bad = []
    for name in ("adelic-Q", "adelic-quad", "adelic-quat-char2"):
        rep = experiment(name)
        if rep.verdict != "pass" or dict(rep.records)["verified"] != "100/100":
            bad.append(name)
    quad = records("adelic-quad")
    if not (int(quad["places[inert]"]) > 0 and int(quad["places[split]"]) > 0):
        bad.append("adelic-quad: support is not mixed")
    refusal = experiment("adelic-quat-char0-refusal")
    recs = dict(refusal.records)
    witness = "[[1,0],[1,0]]" in recs.get("witness.a", "") and "[[0,1],[0,1]]" in recs.get("witness.c", "")
    if refusal.verdict != "refusal" or not witness or recs.get("certificate.unit_remainders") != "0":
        bad.append("char-0 quaternion adeles did not refuse with the witness")
    verdict(8, "adelic division assembles over Q, Q(i) and F_2(t) quaternions; Q quaternions refuse",
            not bad, "; ".join(bad))


def test_criterion_9_dh_decomposition(verdict):
    recs = records("dh-sl2f")
    verdict(9, "construct-then-decompose roundtrips over the rational quaternions",
            recs["dh.roundtrips"] == "1000/1000", recs["dh.roundtrips"])


def test_criterion_10_dieudonne(verdict):
    recs = records("dh-sl2f")
    ok = (recs["dieudonne.GF(5).mismatches"] == "0" and recs["dieudonne.GF(7).mismatches"] == "0"
          and recs["dieudonne.multiplicative"] == "1000/1000")
    verdict(10, "Dieudonne formula matches det over GF(5), GF(7) and is multiplicative over quaternions",
            ok, recs["dieudonne.multiplicative"])


def test_reports_are_reproducible():
    a = run_experiment("adelic-quad", DEFAULT_SEED)
    b = run_experiment("adelic-quad", DEFAULT_SEED)
    assert a.digest() == b.digest()
    assert verify_digest(a.render())
