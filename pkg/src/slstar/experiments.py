"""Canned experiments; each one reproduces an acceptance item as a Report."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import euclid
from .adelic import (
    AdelicMatrix,
    SplittingType,
    adelic_model,
    divide_adelic,
)
from .errors import AlgebraError, NotStarEuclidean, UsageError
from .exhaust import (
    brute_force_pairs,
    exhaustive_divide,
    exhaustive_quaternion,
    flip_parametrised_pairs,
)
from .group import (
    bruhat_h,
    bruhat_u,
    bruhat_w,
    closure_bfs,
    enumerate_sl_star,
    factor,
    factor_path,
    m2,
    make_nonunit_example,
)
from .kernel.tables import decode_matrix, ring_tables
from .local import local_data
from .quaternion import (
    class_mul,
    construct_dh,
    decompose_dh_sl2f,
    dieudonne_det_2x2,
    dieudonne_value_2x2,
    gl_criterion,
    random_sl2_rational,
    random_unit_quaternion,
)
from .report import FAIL, REFUSAL, Report
from .rings import MatrixRing, ring as as_ring
from .rings.quat import RationalQuaternions

DEFAULT_SEED = 20240607

LOCAL_EUCLID_RINGS = (
    "Mat(2,GF(2))", "Mat(2,GF(3))", "Mat(2,GF(4))", "Mat(2,Z/(4))", "Mat(2,Z/(9))",
    "Mat(2,Prod(GF(3),GF(3)))", "Mat(2,Prod(Z/(4),Z/(4)))",
)
ODD_QUATERNIONS = ("SplitQuat(GF(3))", "SplitQuat(GF(5))", "SplitQuat(Z/(9))")
CHAR2_QUATERNIONS = ("SplitQuat(GF(2))", "SplitQuat(GF(4))")
CHAR2_QUAT_MATRIX = "Mat(2,SplitQuat(GF(2)))"
CHAR2_TEMPLATES = ("closed-form", "template")
CLOSURE_EQUAL = ("Mat(2,GF(2))", "Mat(1,GF(2))", "Mat(1,GF(3))", "Mat(1,GF(5))", "SplitQuat(GF(2))")
CLOSURE_STRICT = "SplitQuat(GF(3))"
LIFT_RINGS = ("Z/(9)", "Prod(Z/(4),Z/(4))")
GL_RINGS = ("Mat(2,Prod(GF(2),GF(2)))", "Mat(2,Z/(4))", "Mat(2,Prod(Z/(4),Z/(4)))")
GL_EXHAUSTIVE_LIMIT = 10 ** 6
DIEUDONNE_FIELDS = ("GF(5)", "GF(7)")
ADELIC_PAIRS = 100
DH_ROUNDTRIPS = 1000
DIEUDONNE_PAIRS = 1000
LIFT_SAMPLES = 200

ANCHORS = {
    "star-local-euclid": "2x2 matrices over a *-local ring form a *-Euclidean ring",
    "counterexample-char-odd": "split quaternions over a base with 2 invertible are not *-Euclidean",
    "char2-quat-euclid": "split quaternions in characteristic 2 admit one-step division",
    "bruhat-closure-char2": "SL_*(2,A) is generated by Bruhat elements for *-Euclidean A",
    "bruhat-closure-char3": "Bruhat generation of SL_*(2,H) holds only in characteristic 2",
    "adelic-Q": "adelic division over M(n,A_Q) from local and integral solutions",
    "adelic-quad": "adelic division over M(n,A_E) for a quadratic field E",
    "adelic-quat-char2": "adelic division over split quaternions in characteristic 2",
    "adelic-quat-char0-refusal": "split-quaternion adeles outside characteristic 2 are not *-Euclidean",
    "gl-criterion": "invertibility over a *-local matrix ring is detected on residue determinants",
    "dh-sl2f": "SL_*(2,H) = D_H . SL(2,F) and the Dieudonne determinant",
}


# ---------------------------------------------------------------------------
# acceptance items

def _star_local_euclid(rep: Report, rng: random.Random):
    for d in LOCAL_EUCLID_RINGS:
        res = exhaustive_divide(d, seed=rep.seed)
        rep.extend(res.records(), prefix=f"{d}.")
        if not res.passed:
            rep.fail(f"{d}: {res.verified}/{res.pairs} verified")
    _lift_coherence(rep, rng)


def _lift_coherence(rep: Report, rng: random.Random):
    """Section and projection agree with units and symmetry, and lifted steps descend."""
    for d in LIFT_RINGS:
        for R in (as_ring(d), MatrixRing(as_ring(d), 2)):
            data = local_data(R)
            res = data.residue
            sec_ok = all(data.project(data.section(y)) == y for y in res.elements())
            unit_ok = sym_ok = True
            for x in R._element_list():
                y = data.project(x)
                unit_ok &= R.is_unit(x) == res.is_unit(y)
                if R.is_symmetric(x):
                    sym_ok &= res.is_symmetric(y)
            key = R.descriptor()
            rep.add(f"lift.{key}.section", sec_ok)
            rep.add(f"lift.{key}.units", unit_ok)
            rep.add(f"lift.{key}.symmetry", sym_ok)
            if not (sec_ok and unit_ok and sym_ok):
                rep.fail(f"section/lift coherence over {key}")
        A = MatrixRing(as_ring(d), 2)
        good, total = _lift_descends(A, rng, rep.seed)
        rep.add(f"lift.{A.descriptor()}.descends", f"{good}/{total}")
        if good != total:
            rep.fail(f"divide_lift over {A.descriptor()} does not descend")


def _lift_descends(A: MatrixRing, rng, seed):
    data = local_data(A)
    Ab = data.residue
    T = ring_tables(A.base)
    blocks = brute_force_pairs(A) if A.base.size() < 16 else flip_parametrised_pairs(A)
    Ac, Cc = next(iter(blocks))
    picks = rng.sample(range(len(Ac)), min(LIFT_SAMPLES, len(Ac)))
    good = 0
    for i in picks:
        a, c = decode_matrix(T, Ac[i]), decode_matrix(T, Cc[i])
        step = euclid.divide_lift(A, a, c, seed)
        sb = data.project(step.s)
        rb = Ab.sub(data.project(a), Ab.mul(sb, data.project(c)))
        if step.check(A, a, c) and Ab.is_symmetric(sb) and Ab.is_unit(rb):
            good += 1
    return good, len(picks)


def _counterexample_char_odd(rep: Report, rng):
    for d in ODD_QUATERNIONS:
        H = as_ring(d)
        a, c = euclid.counterexample_pair(H)
        cert = euclid.certify_not_star_euclidean(H, a, c)
        rep.extend(cert.records(), prefix=f"{d}.")
        sym = euclid.symmetric_count(H)
        size = H.base.size()
        rep.add(f"{d}.symmetric_count", sym)
        ok = cert.unit_remainders == 0 and sym == size and cert.scalar_only is not False
        if not ok:
            rep.fail(f"{d}: certificate does not close")


def _char2_quat_euclid(rep: Report, rng):
    for d in CHAR2_QUATERNIONS:
        res = exhaustive_quaternion(d, seed=rep.seed)
        rep.extend(res.records(), prefix=f"{d}.")
        families = set(res.methods)
        rep.add(f"{d}.templates_only", all(f.startswith(CHAR2_TEMPLATES) for f in families))
        if not res.passed or not all(f.startswith(CHAR2_TEMPLATES) for f in families):
            rep.fail(f"{d}: {res.verified}/{res.pairs} verified")
    res = exhaustive_divide(CHAR2_QUAT_MATRIX, seed=rep.seed)
    rep.extend(res.records(), prefix=f"{CHAR2_QUAT_MATRIX}.")
    if not res.passed:
        rep.fail(f"{CHAR2_QUAT_MATRIX}: {res.verified}/{res.pairs} verified")


def _bruhat_closure_char2(rep: Report, rng):
    for d in CLOSURE_EQUAL:
        A = as_ring(d)
        closure = closure_bfs(A)
        group = enumerate_sl_star(A)
        equal = closure.elements == frozenset(group)
        rep.add(f"{d}.closure_size", closure.size)
        rep.add(f"{d}.group_size", len(group))
        rep.add(f"{d}.equal", equal)
        if not equal:
            rep.fail(f"{d}: closure differs from the group")
        paths = {"unit-corner": 0, "divide": 0}
        bad = 0
        for g in group:
            try:
                word = factor(A, g, rep.seed)
            except AlgebraError:
                bad += 1
                continue
            if word.evaluate(A) != g:
                bad += 1
            paths[factor_path(A, g)] += 1
        rep.add(f"{d}.factored", f"{len(group) - bad}/{len(group)}")
        rep.add(f"{d}.path[unit-corner]", paths["unit-corner"])
        rep.add(f"{d}.path[divide]", paths["divide"])
        if bad:
            rep.fail(f"{d}: {bad} elements failed to factor")
    A = as_ring("Mat(2,GF(2))")
    example = make_nonunit_example(A)
    g = example.evaluate(A)
    word = factor(A, g, rep.seed)
    rep.add("nonunit.element", m2(A).format(g))
    rep.add("nonunit.path", factor_path(A, g))
    rep.add("nonunit.word", word.serialize(A))
    if factor_path(A, g) != "divide" or word.evaluate(A) != g:
        rep.fail("non-unit example did not factor through divide")


def _bruhat_closure_char3(rep: Report, rng):
    A = as_ring(CLOSURE_STRICT)
    closure = closure_bfs(A)
    group = frozenset(enumerate_sl_star(A))
    strict = closure.elements < group
    rep.add("closure_size", closure.size)
    rep.add("group_size", len(group))
    rep.add("strict_subset", strict)
    if closure.elements <= group and len(group) % closure.size == 0:
        rep.add("index", len(group) // closure.size)
    else:
        rep.add("index", f"{len(group)}/{closure.size}")
    if not strict:
        rep.fail("closure is not a strict subgroup")


# ---------------------------------------------------------------------------
# adelic items

ADELIC_BASES = {
    "adelic-Q": ("Q", 2, {"pool": (2, 3, 5, 7, 11, 13)}),
    "adelic-quad": ("Quad(Q,-1)", 2, {"inert": (3, 7, 11), "split": (5, 13, 17)}),
    "adelic-quat-char2": ("SplitQuat(GF(2)(t))", 1, {"pool": ("t", "t+1", "t^2+t+1")}),
}


def _random_unit(R, rng, bound=2):
    while True:
        x = R.random(rng, bound)
        if R.is_unit(x):
            return x


def random_valid_pair(R, rng, length=None, bound=2):
    """First column of a random Bruhat word; a* c is symmetric and (a, c) coprime."""
    M = m2(R)
    g = M.one
    for _ in range(length or rng.randint(2, 5)):
        kind = rng.randrange(3)
        if kind == 0:
            x = bruhat_h(R, _random_unit(R, rng, bound))
        elif kind == 1:
            x = bruhat_u(R, R.random_fixed(rng, 1, bound))
        else:
            x = bruhat_w(R)
        g = M.mul(g, x)
    return g[0][0], g[1][0]


def _canonical_tail(model, rng):
    """Tails with a closed-form solution: (1, h), (0, 1) or (u, 0)."""
    T = model.tail_ring
    B = T.base
    k = rng.randrange(3)
    if k == 0:
        if model.kind == "quaternion":
            h = T.random_fixed(rng, 1, 2)
        else:
            x, y, z = (B.from_int(rng.randint(-3, 3)) for _ in range(3))
            h = ((x, y), (y, z))
        return T.one, h
    if k == 1:
        return T.zero, T.one
    if model.kind == "quaternion":
        return T.one, T.zero
    o, z = B.one, B.zero
    return ((z, o), (o, z)), T.zero


def _adelic_support(cfg, rng):
    if "pool" in cfg:
        return rng.sample(cfg["pool"], rng.randint(1, 3))
    # mixed inert and split support
    return [rng.choice(cfg["inert"]), rng.choice(cfg["split"])]


def _adelic(name):
    base, n, cfg = ADELIC_BASES[name]

    def run(rep: Report, rng):
        model = adelic_model(base, n)
        rep.params.update(base=base, n=n, pairs=ADELIC_PAIRS)
        ok = 0
        methods = {}
        kinds = {}
        for _ in range(ADELIC_PAIRS):
            comps_a, comps_c = {}, {}
            for token in _adelic_support(cfg, rng):
                v = model.place(token)
                a_v, c_v = random_valid_pair(model.component_ring(v), rng)
                comps_a[v], comps_c[v] = a_v, c_v
                kind = model.splitting(v).value
                kinds[kind] = kinds.get(kind, 0) + 1
            ta, tc = _canonical_tail(model, rng)
            a = AdelicMatrix.build(model, comps_a, ta)
            c = AdelicMatrix.build(model, comps_c, tc)
            try:
                res = divide_adelic(a, c, rep.seed)
            except AlgebraError as exc:
                rep.add("error", f"{type(exc).__name__}: {exc}")
                continue
            if res.verify():
                ok += 1
            for _v, m in res.methods:
                fam = m.split("(")[0].strip()
                methods[fam] = methods.get(fam, 0) + 1
            fam = res.tail_method.split("(")[0].strip()
            methods[f"tail:{fam}"] = methods.get(f"tail:{fam}", 0) + 1
        rep.add("verified", f"{ok}/{ADELIC_PAIRS}")
        if model.kind == "quad":
            for k in sorted(kinds):
                rep.add(f"places[{k}]", kinds[k])
        else:
            rep.add("places", sum(kinds.values()))
        for k in sorted(methods):
            rep.add(f"method[{k}]", methods[k])
        if name == "adelic-quad" and not (kinds.get(SplittingType.SPLIT.value) and kinds.get(SplittingType.INERT.value)):
            rep.fail("support did not mix inert and split places")
        if ok != ADELIC_PAIRS:
            rep.fail(f"{ADELIC_PAIRS - ok} adelic pairs failed")

    return run


def _adelic_quat_refusal(rep: Report, rng):
    model = adelic_model("SplitQuat(Q)", 2)
    I = model.tail_ring.one
    a = AdelicMatrix.build(model, {}, I)
    c = AdelicMatrix.build(model, {}, model.tail_ring.zero)
    try:
        divide_adelic(a, c, rep.seed)
    except NotStarEuclidean as exc:
        wa, wc = exc.witness
        rep.add("refused", True)
        rep.add("witness.a", wa.format())
        rep.add("witness.c", wc.format())
        rep.extend(exc.certificate.records(), prefix="certificate.")
        if exc.certificate.unit_remainders != 0:
            rep.fail("witness certificate has unit remainders")
        else:
            rep.verdict = REFUSAL
        return
    rep.fail("quaternion adelic divide over Q did not refuse")


# ---------------------------------------------------------------------------
# GL criterion and D_H

def _gl_criterion(rep: Report, rng):
    for d in GL_RINGS:
        A = as_ring(d)
        els = A._element_list() if A.base.size() ** 4 <= GL_EXHAUSTIVE_LIMIT else None
        mats = els if els is not None else (A.random(rng) for _ in range(256 * 256))
        total = agree = units = 0
        for x in mats:
            crit = gl_criterion(A, x)
            total += 1
            agree += crit.agree()
            units += crit.invertible
        rep.add(f"{d}.matrices", total)
        rep.add(f"{d}.mode", "exhaustive" if els is not None else "sampled")
        rep.add(f"{d}.agree", f"{agree}/{total}")
        rep.add(f"{d}.invertible", units)
        if agree != total:
            rep.fail(f"{d}: {total - agree} disagreements")


def _dh_sl2f(rep: Report, rng):
    Q = RationalQuaternions()
    ok = 0
    for _ in range(DH_ROUNDTRIPS):
        q = random_unit_quaternion(Q, rng)
        m = random_sl2_rational(rng)
        g = construct_dh(Q, q, m)
        try:
            q2, m2_ = decompose_dh_sl2f(Q, g)
        except AlgebraError:
            continue
        det = m2_[0][0] * m2_[1][1] - m2_[0][1] * m2_[1][0]
        if det == 1 and all(isinstance(x, Fraction) for row in m2_ for x in row):
            ok += 1
    rep.add("dh.roundtrips", f"{ok}/{DH_ROUNDTRIPS}")
    if ok != DH_ROUNDTRIPS:
        rep.fail(f"{DH_ROUNDTRIPS - ok} D_H roundtrips failed")
    for d in DIEUDONNE_FIELDS:
        F = as_ring(d)
        A = MatrixRing(F, 2)
        els = F._element_list()
        bad = sum(dieudonne_value_2x2(F, m) != A.det(m) for m in _all_2x2(els))
        rep.add(f"dieudonne.{d}.mismatches", bad)
        if bad:
            rep.fail(f"Dieudonne formula differs from det over {d}")
    A = MatrixRing(Q, 2)
    good = 0
    for _ in range(DIEUDONNE_PAIRS):
        x, y = A.random(rng, 3), A.random(rng, 3)
        lhs = dieudonne_det_2x2(Q, A.mul(x, y))
        rhs = class_mul(Q, dieudonne_det_2x2(Q, x), dieudonne_det_2x2(Q, y))
        good += lhs.value == rhs.value
    rep.add("dieudonne.multiplicative", f"{good}/{DIEUDONNE_PAIRS}")
    if good != DIEUDONNE_PAIRS:
        rep.fail("Dieudonne class is not multiplicative")


def _all_2x2(els):
    for a, b, c, d in itertools.product(els, repeat=4):
        yield (a, b), (c, d)


# ---------------------------------------------------------------------------
# registry

EXPERIMENTS = {
    "star-local-euclid": _star_local_euclid,
    "counterexample-char-odd": _counterexample_char_odd,
    "char2-quat-euclid": _char2_quat_euclid,
    "bruhat-closure-char2": _bruhat_closure_char2,
    "bruhat-closure-char3": _bruhat_closure_char3,
    "adelic-Q": _adelic("adelic-Q"),
    "adelic-quad": _adelic("adelic-quad"),
    "adelic-quat-char2": _adelic("adelic-quat-char2"),
    "adelic-quat-char0-refusal": _adelic_quat_refusal,
    "gl-criterion": _gl_criterion,
    "dh-sl2f": _dh_sl2f,
}

DESCRIPTORS = {
    "star-local-euclid": ";".join(LOCAL_EUCLID_RINGS),
    "counterexample-char-odd": ";".join(ODD_QUATERNIONS),
    "char2-quat-euclid": ";".join(CHAR2_QUATERNIONS + (CHAR2_QUAT_MATRIX,)),
    "bruhat-closure-char2": ";".join(CLOSURE_EQUAL),
    "bruhat-closure-char3": CLOSURE_STRICT,
    "adelic-Q": "Adele(Q,n=2)",
    "adelic-quad": "Adele(Quad(Q,-1),n=2)",
    "adelic-quat-char2": "Adele(SplitQuat(GF(2)(t)),n=1)",
    "adelic-quat-char0-refusal": "Adele(SplitQuat(Q),n=2)",
    "gl-criterion": ";".join(GL_RINGS),
    "dh-sl2f": "Quat;" + ";".join(DIEUDONNE_FIELDS),
}


def experiment_names() -> list[str]:
    return list(EXPERIMENTS)


def run_experiment(name: str, seed: int = DEFAULT_SEED) -> Report:
    if name not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {name!r}; choose from: {', '.join(EXPERIMENTS)}")
    rep = Report(name, DESCRIPTORS[name], ANCHORS[name], seed)
    rng = random.Random(seed)
    try:
        EXPERIMENTS[name](rep, rng)
    except AlgebraError as exc:
        rep.verdict = FAIL
        rep.add("error", f"{type(exc).__name__}: {exc}")
    return rep


__all__ = ["EXPERIMENTS", "ANCHORS", "DEFAULT_SEED", "experiment_names", "run_experiment", "random_valid_pair"]
