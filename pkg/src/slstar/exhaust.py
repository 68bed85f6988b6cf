"""Exhaustive verification of the division step over small finite rings.

Hypothesis-satisfying pairs (a, c) are enumerated by one of three routes:

* brute force over all pairs of M(2, R), filtered by the batch kernel;
* for M(2, R x R) with the flip involution, a parametrisation: the second
  components are K t where K spans the symplectic complement of [a_1; c_1]
  and t runs over GL(2, R);
* for M(2, SplitQuat(GF(2))), representatives of right unit orbits, which
  are the Lagrangian 4-planes of GF(2)^8.

Each pair is then divided either by the ordinary ``divide`` or, for rings
with a nonzero radical, by a batched lift: s is the section of the residue
solution and r = a - s c is checked in the kernel.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .euclid import DEFAULT_SEED, _divide_step, derive_symmetry, divide, is_coprime
from .errors import AlgebraError, Unsupported
from .kernel.tables import all_matrices, decode_matrix, ring_tables
from .local import local_data
from .rings import MatrixRing, ring as as_ring
from .rings.scalar import ProductRing

BRUTE_FORCE_LIMIT = 10 ** 8
CHUNK_PAIRS = 1 << 19
SAMPLE_CHECKS = 500


@dataclass
class ExhaustiveReport:
    descriptor: str
    enumeration: str
    division: str
    pairs: int = 0
    verified: int = 0
    methods: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    sample_checked: int = 0
    sample_agree: int = 0
    backend: str = kernel.BACKEND

    @property
    def passed(self) -> bool:
        return self.pairs > 0 and self.verified == self.pairs and self.sample_agree == self.sample_checked

    def records(self) -> list[tuple[str, str]]:
        out = [
            ("descriptor", self.descriptor),
            ("enumeration", self.enumeration),
            ("division", self.division),
            ("pairs", str(self.pairs)),
            ("verified", str(self.verified)),
        ]
        for m, k in sorted(self.methods.items()):
            out.append((f"method[{m}]", str(k)))
        if self.sample_checked:
            out.append(("sample_checked", str(self.sample_checked)))
            out.append(("sample_agree", str(self.sample_agree)))
        out.append(("failures", str(len(self.failures))))
        return out


# ---------------------------------------------------------------------------
# encodings

def _check_shape(A: MatrixRing):
    if not (isinstance(A, MatrixRing) and A.n == 2 and A.form == "transpose"):
        raise Unsupported(f"batch routes need M(2, R) with the transpose involution, not {A}")
    if not (A.base.finite and A.base.commutative):
        raise Unsupported(f"{A.base} is not a finite commutative ring")


def notin_tables(A: MatrixRing) -> np.ndarray:
    """One row per maximal ideal of the base: 1 where the element avoids it."""
    R = A.base
    data = local_data(R)
    els = R._element_list()
    rows = [[0 if data.in_p(x) else 1 for x in els]]
    if isinstance(R, ProductRing):
        rows.append([0 if data.in_pstar(x) else 1 for x in els])
    return np.array(rows, dtype=np.uint8)


def _decode_pairs(T, Ac, Cc):
    return [(decode_matrix(T, a), decode_matrix(T, c)) for a, c in zip(Ac, Cc)]


# ---------------------------------------------------------------------------
# enumeration

def brute_force_pairs(A: MatrixRing, chunk=CHUNK_PAIRS):
    """Yield blocks (A_codes, C_codes) of all valid pairs, by brute force."""
    _check_shape(A)
    T = ring_tables(A.base)
    notin = notin_tables(A)
    mats = all_matrices(T)
    N = len(mats)
    if N * N > BRUTE_FORCE_LIMIT:
        raise Unsupported(f"{N * N} raw pairs exceed the brute-force limit")
    step = max(1, chunk // N)
    for start in range(0, N, step):
        a_blk = mats[start:start + step]
        Ab = np.repeat(a_blk, N, axis=0)
        Cb = np.tile(mats, (len(a_blk), 1))
        ok = kernel.valid_mask(T, notin, Ab, Cb)
        if ok.any():
            yield Ab[ok], Cb[ok]


def _component_tables(A: MatrixRing):
    R = A.base
    if not (isinstance(R, ProductRing) and R.phi_kind == "id"):
        raise Unsupported("the flip parametrisation needs M(2, R x R) with the plain flip")
    return ring_tables(R.left)


def _unimodular_columns(T1, X):
    """X has shape (M, 4, 2); mask of those whose 2x2 minors include a unit."""
    add, mul, neg, unit = T1.add, T1.mul, T1.neg, T1.unit
    hit = np.zeros(len(X), dtype=bool)
    for i in range(4):
        for j in range(i + 1, 4):
            m = add[mul[X[:, i, 0], X[:, j, 1]], neg[mul[X[:, i, 1], X[:, j, 0]]]]
            hit |= unit[m].astype(bool)
    return hit


def _gl2(T1):
    q = T1.size
    g = np.indices((q,) * 4).reshape(4, -1).T
    det = T1.add[T1.mul[g[:, 0], g[:, 3]], T1.neg[T1.mul[g[:, 1], g[:, 2]]]]
    return g[T1.unit[det].astype(bool)].reshape(-1, 2, 2)


def _complement_bases(T1, X):
    """For each unimodular X (M, 4, 2) a basis K (M, 4, 2) of {y : X^t Omega y = 0}.

    The complement is free of rank 2, so any two kernel vectors whose
    residues are independent form a basis.
    """
    add, mul, neg, unit = T1.add, T1.mul, T1.neg, T1.unit
    q = T1.size
    vecs = np.indices((q,) * 4).reshape(4, -1).T.astype(np.int32)     # (V, 4)
    # Omega y = (y2, y3, -y0, -y1)
    w = np.stack([vecs[:, 2], vecs[:, 3], neg[vecs[:, 0]], neg[vecs[:, 1]]], axis=1)
    z = T1.index[T1.ring.zero]
    ker = np.ones((len(X), len(vecs)), dtype=bool)
    for j in range(2):
        acc = np.full((len(X), len(vecs)), z, dtype=np.int32)
        for i in range(4):
            acc = add[acc, mul[X[:, i, j][:, None], w[None, :, i]]]
        ker &= acc == z
    primitive = unit[vecs].any(axis=1)
    first = np.argmax(ker & primitive[None, :], axis=1)
    v1 = vecs[first]                                                  # (M, 4)
    indep = np.zeros_like(ker)
    for i in range(4):
        for j in range(i + 1, 4):
            m = add[mul[v1[:, i][:, None], vecs[None, :, j]], neg[mul[v1[:, j][:, None], vecs[None, :, i]]]]
            indep |= unit[m].astype(bool)
    ok = ker & indep
    if not ok.any(axis=1).all():
        raise AssertionError("complement is not free of rank 2")  # pragma: no cover
    v2 = vecs[np.argmax(ok, axis=1)]
    return np.stack([v1, v2], axis=2).astype(np.int32)


def flip_parametrised_pairs(A: MatrixRing, chunk=2048):
    """Yield blocks of all valid pairs of M(2, R x R) via first components and GL(2, R)."""
    _check_shape(A)
    T1 = _component_tables(A)
    q = T1.size
    X = np.indices((q,) * 8).reshape(8, -1).T.reshape(-1, 4, 2).astype(np.int32)
    X = X[_unimodular_columns(T1, X)]
    G = _gl2(T1)                                          # (g, 2, 2)
    add, mul = T1.add, T1.mul
    for start in range(0, len(X), chunk):
        Xb = X[start:start + chunk]
        K = _complement_bases(T1, Xb)                     # (m, 4, 2)
        # Y = K t for every t in GL(2, R): (m, g, 4, 2)
        Y = np.empty((len(Xb), len(G), 4, 2), dtype=np.int32)
        for i in range(4):
            for j in range(2):
                Y[:, :, i, j] = add[mul[K[:, None, i, 0], G[None, :, 0, j]],
                                    mul[K[:, None, i, 1], G[None, :, 1, j]]]
        Xr = np.repeat(Xb, len(G), axis=0)
        Yr = Y.reshape(-1, 4, 2)
        # entry code of (x | y) is x * q + y
        a = Xr[:, 0:2, :] * q + Yr[:, 0:2, :]
        c = Xr[:, 2:4, :] * q + Yr[:, 2:4, :]
        yield a.reshape(-1, 4).astype(np.int32), c.reshape(-1, 4).astype(np.int32)


def lagrangian_pairs():
    """Representatives (a, c) of the right GL orbits of valid pairs in M(2, SplitQuat(GF(2))).

    A valid pair is a full-rank 8x4 matrix [a; c] over GF(2) (flattened)
    whose column space is isotropic for the form behind a* c = (a* c)*.
    Right multiplication by units preserves validity and carries a solution
    s for (a, c) to a solution for (a u, c u), so one representative per
    column space suffices.
    """
    A = as_ring("Mat(2,SplitQuat(GF(2)))")
    fm = A.flat_model()
    F = fm.ring
    G, Gi = _flat_gram(F)
    reps = _rref_subspaces(8, 4)                           # (N, 4, 8) bases
    X = np.transpose(reps, (0, 2, 1))                      # columns = basis
    a, c = X[:, :4, :], X[:, 4:, :]
    astar = (G @ np.transpose(a, (0, 2, 1)) @ Gi) % 2
    P = (astar @ c) % 2
    Pstar = (G @ np.transpose(P, (0, 2, 1)) @ Gi) % 2
    keep = np.all(Pstar == P, axis=(1, 2))
    out = []
    one, zero = F.base.one, F.base.zero
    for am, cm in zip(a[keep], c[keep]):
        fa = tuple(tuple(one if x else zero for x in row) for row in am)
        fc = tuple(tuple(one if x else zero for x in row) for row in cm)
        out.append((fm.from_flat(fa), fm.from_flat(fc)))
    return A, out


def _flat_gram(F: MatrixRing):
    """Permutation matrices G, G^-1 with x* = G x^t G^-1 on the flat ring mod 2."""
    n = F.n
    G = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(F.gperm):
        G[p, i] = 1
    return G, G.T.copy()


def _rref_subspaces(n: int, k: int) -> np.ndarray:
    """Bases in reduced row echelon form of all k-dimensional subspaces of GF(2)^n."""
    out = []
    for pivots in itertools.combinations(range(n), k):
        free = [(r, col) for r in range(k) for col in range(pivots[r] + 1, n) if col not in pivots]
        for bits in itertools.product((0, 1), repeat=len(free)):
            m = np.zeros((k, n), dtype=np.int64)
            for r, p in enumerate(pivots):
                m[r, p] = 1
            for (r, col), b in zip(free, bits):
                m[r, col] = b
            out.append(m)
    return np.array(out)


# ---------------------------------------------------------------------------
# division routes

@dataclass(frozen=True)
class LiftTable:
    """Residue solutions s-bar for every valid residue pair, lifted by the section."""

    tables: object
    residue_tables: object
    proj: np.ndarray
    base: int
    solution: np.ndarray      # (Nb, Nb) residue matrix index of s-bar, -1 if invalid
    sections: np.ndarray      # (Nb, 4) upstairs codes of section(s-bar)
    methods: Counter


def build_lift_table(A: MatrixRing, seed=DEFAULT_SEED) -> LiftTable:
    _check_shape(A)
    data = local_data(A.base)
    R, Rb = A.base, data.residue
    T, Tb = ring_tables(R), ring_tables(Rb)
    proj = np.array([Tb.index[data.project(x)] for x in T.elements], dtype=np.int32)
    sec = np.array([T.index[data.section(y)] for y in Tb.elements], dtype=np.int32)
    Ab = MatrixRing(Rb, 2)
    mats_b = all_matrices(Tb)
    Nb = len(mats_b)
    solution = np.full((Nb, Nb), -1, dtype=np.int32)
    methods = Counter()
    notin = notin_tables(Ab)
    base = Tb.size
    for ab_codes, cb_codes in _all_pairs_blocks(Tb, notin, mats_b):
        for a_row, c_row in zip(ab_codes, cb_codes):
            ab, cb = decode_matrix(Tb, a_row), decode_matrix(Tb, c_row)
            step = _divide_step(Ab, ab, cb, seed)
            s_row = [Tb.index[x] for row in step.s for x in row]
            ia = _index(a_row, base)
            ic = _index(c_row, base)
            solution[ia, ic] = _index(s_row, base)
            methods[step.method] += 1
    sections = sec[mats_b]
    return LiftTable(T, Tb, proj, base, solution, sections, methods)


def _index(row, base) -> int:
    return ((int(row[0]) * base + int(row[1])) * base + int(row[2])) * base + int(row[3])


def _all_pairs_blocks(T, notin, mats):
    N = len(mats)
    step = max(1, CHUNK_PAIRS // N)
    for start in range(0, N, step):
        a_blk = mats[start:start + step]
        Ab = np.repeat(a_blk, N, axis=0)
        Cb = np.tile(mats, (len(a_blk), 1))
        ok = kernel.valid_mask(T, notin, Ab, Cb)
        if ok.any():
            yield Ab[ok], Cb[ok]


def lift_verify_block(L: LiftTable, Ac, Cc):
    """Batched divide_lift on one block: (number verified, failing indices)."""
    ia = kernel.project(L.proj, L.base, Ac)
    ic = kernel.project(L.proj, L.base, Cc)
    sb = L.solution[ia, ic]
    missing = sb < 0
    S = L.sections[np.where(missing, 0, sb)]
    _R, ok = kernel.remainder_units(L.tables, Ac, S, Cc)
    ok &= kernel.is_symmetric_mask(L.tables, S)
    ok &= ~missing
    return int(ok.sum()), np.nonzero(~ok)[0]


def _run_direct(A, blocks, report, seed):
    T = ring_tables(A.base)
    for Ac, Cc in blocks:
        for a, c in _decode_pairs(T, Ac, Cc):
            report.pairs += 1
            try:
                chain = divide(A, a, c, seed)
            except AlgebraError as exc:
                report.failures.append((a, c, type(exc).__name__))
                continue
            if chain.length == 1 and chain.verify():
                report.verified += 1
                report.methods[_method_family(chain.steps[0].method)] += 1
            else:
                report.failures.append((a, c, "chain"))


def _method_family(method: str) -> str:
    return method.split("(")[0].strip()


def _run_lift(A, blocks, report, seed, samples):
    L = build_lift_table(A, seed)
    for m, k in L.methods.items():
        report.methods[f"residue:{_method_family(m)}"] += k
    rng = random.Random(seed)
    pool = []
    for Ac, Cc in blocks:
        good, bad = lift_verify_block(L, Ac, Cc)
        report.pairs += len(Ac)
        report.verified += good
        for i in bad[:10]:
            report.failures.append((decode_matrix(L.tables, Ac[i]), decode_matrix(L.tables, Cc[i]), "lift"))
        # reservoir of pairs for the cross-check against divide
        take = rng.sample(range(len(Ac)), min(len(Ac), samples))
        pool.extend((Ac[i], Cc[i]) for i in take)
    picks = rng.sample(pool, min(samples, len(pool)))
    for a_row, c_row in picks:
        a, c = decode_matrix(L.tables, a_row), decode_matrix(L.tables, c_row)
        report.sample_checked += 1
        chain = divide(A, a, c, seed)
        ib = _index(L.proj[a_row], L.base), _index(L.proj[c_row], L.base)
        s_kernel = decode_matrix(L.tables, L.sections[L.solution[ib]])
        if chain.verify() and chain.steps[0].s == s_kernel:
            report.sample_agree += 1


def exhaustive_divide(descriptor, enumeration="auto", division="auto", seed=DEFAULT_SEED,
                      samples=SAMPLE_CHECKS) -> ExhaustiveReport:
    """Divide every hypothesis-satisfying pair of a small matrix ring."""
    A = as_ring(descriptor)
    if A.descriptor() == "Mat(2,SplitQuat(GF(2)))":
        A, pairs = lagrangian_pairs()
        report = ExhaustiveReport(A.descriptor(), "lagrangian orbit representatives", "divide")
        for a, c in pairs:
            report.pairs += 1
            chain = divide(A, a, c, seed)
            if chain.length == 1 and chain.verify():
                report.verified += 1
                report.methods[_method_family(chain.steps[0].method)] += 1
        return report
    _check_shape(A)
    if enumeration == "auto":
        N = A.base.size() ** 4
        enumeration = "brute-force" if N * N <= BRUTE_FORCE_LIMIT else "flip-parametrised"
    if division == "auto":
        zero_radical = local_data(A).residue == A
        small = A.base.size() ** 8 <= 1 << 16
        division = "divide" if zero_radical or small else "batched-lift"
    blocks = brute_force_pairs(A) if enumeration == "brute-force" else flip_parametrised_pairs(A)
    report = ExhaustiveReport(A.descriptor(), enumeration, division)
    if division == "divide":
        _run_direct(A, blocks, report, seed)
    else:
        _run_lift(A, blocks, report, seed, samples)
    return report


def exhaustive_quaternion(descriptor, seed=DEFAULT_SEED) -> ExhaustiveReport:
    """All valid pairs of SplitQuat(F), F a small field, through divide."""
    A = as_ring(descriptor)
    report = ExhaustiveReport(A.descriptor(), "brute-force", "divide")
    els = A._element_list()
    for a in els:
        for c in els:
            if not (derive_symmetry(A, a, c) and is_coprime(A, a, c)):
                continue
            report.pairs += 1
            try:
                chain = divide(A, a, c, seed)
            except AlgebraError as exc:
                report.failures.append((a, c, type(exc).__name__))
                continue
            if chain.length == 1 and chain.verify():
                report.verified += 1
                report.methods[_method_family(chain.steps[0].method)] += 1
    return report


__all__ = [
    "ExhaustiveReport", "exhaustive_divide", "exhaustive_quaternion", "brute_force_pairs",
    "flip_parametrised_pairs", "lagrangian_pairs", "build_lift_table", "lift_verify_block",
    "notin_tables",
]
