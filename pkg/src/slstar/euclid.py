"""The *-Euclidean division step: a = s c + r with s symmetric and r a unit.

Algorithms by ring class:

* matrices over a field (any involution form): closed forms, then a sweep of
  symmetric matrices ordered by support size, or a seeded random search over
  infinite fields;
* matrices over R x R with the flip involution: componentwise elimination;
* split quaternions over a characteristic-2 field: column normalisation and
  the three triangular/anti-triangular templates;
* matrices over a *-local ring: solve modulo the radical and lift.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg
from .errors import (
    CapExceeded,
    HypothesesNotMet,
    NotCertified,
    NotCoprime,
    NotStarEuclidean,
    PostconditionViolation,
    SearchExhausted,
    SymmetryViolation,
    Unsupported,
    WrongCharacteristic,
)
from .local import local_data
from .rings import Element, MatrixRing, ring as as_ring
from .rings.scalar import ProductRing

DEFAULT_SEED = 20240611
MAX_CHAIN = 8
SYM_CACHE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# data

@dataclass(frozen=True)
class CoprimeCertificate:
    x: tuple
    y: tuple

    def check(self, A: MatrixRing, a, c) -> bool:
        return A.add(A.mul(self.x, a), A.mul(self.y, c)) == A.one


@dataclass(frozen=True)
class DivisionStep:
    s: tuple
    r: tuple
    method: str = ""

    def check(self, A: MatrixRing, a, c) -> bool:
        return (
            A.is_symmetric(self.s)
            and A.add(A.mul(self.s, c), self.r) == a
        )


@dataclass(frozen=True)
class DivisionChain:
    """Steps realising r_{i-1} = s_i r_i + r_{i+1} with r_{-1} = a, r_0 = c."""

    ring: MatrixRing
    a: tuple
    c: tuple
    steps: tuple

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def remainders(self) -> list:
        return [self.a, self.c] + [st.r for st in self.steps]

    def verify(self) -> bool:
        A = self.ring
        rs = self.remainders
        for i, st in enumerate(self.steps):
            if not A.is_symmetric(st.s):
                return False
            if A.add(A.mul(st.s, rs[i + 1]), rs[i + 2]) != rs[i]:
                return False
        return bool(self.steps) and A.is_unit(rs[-1])

    def records(self) -> list[tuple[str, str]]:
        A = self.ring
        out = [("length", str(self.length))]
        for i, st in enumerate(self.steps):
            out.append((f"s{i}", A.format(st.s)))
            out.append((f"r{i + 1}", A.format(st.r)))
            if st.method:
                out.append((f"method{i}", st.method))
        return out


@dataclass(frozen=True)
class ExhaustionCertificate:
    """Every symmetric s was tried and a - s c was never a unit."""

    descriptor: str
    a: tuple
    c: tuple
    symmetric_count: int
    unit_remainders: int
    base_size: int | None = None
    scalar_only: bool | None = None
    coprime: CoprimeCertificate | None = field(default=None, compare=False)

    def records(self) -> list[tuple[str, str]]:
        out = [
            ("descriptor", self.descriptor),
            ("symmetric_candidates", str(self.symmetric_count)),
            ("unit_remainders", str(self.unit_remainders)),
        ]
        if self.base_size is not None:
            out.append(("base_size", str(self.base_size)))
        if self.scalar_only is not None:
            out.append(("symmetric_are_scalars", str(self.scalar_only).lower()))
        return out


# ---------------------------------------------------------------------------
# hypotheses

def derive_symmetry(A: MatrixRing, a, c) -> bool:
    """a* c == c* a."""
    return A.mul(A.involute(a), c) == A.mul(A.involute(c), a)


def _coprime_values(A: MatrixRing, a, c):
    B = A.base
    if isinstance(B, MatrixRing):
        fm = A.flat_model()
        res = _coprime_values(fm.ring, fm.to_flat(a), fm.to_flat(c))
        if res is None:
            return None
        return fm.from_flat(res[0]), fm.from_flat(res[1])
    if B.is_division_ring:
        return linalg.left_generation_certificate(B, a, c)
    if isinstance(B, ProductRing) and B.left.is_division_ring:
        a1, a2 = linalg.split_product(a)
        c1, c2 = linalg.split_product(c)
        one = linalg.left_generation_certificate(B.left, a1, c1)
        two = linalg.left_generation_certificate(B.right, a2, c2)
        if one is None or two is None:
            return None
        return linalg.join_product(one[0], two[0]), linalg.join_product(one[1], two[1])
    try:
        data = local_data(A)
    except Unsupported:
        raise Unsupported(f"no coprimality test over {A}") from None
    if data.residue == A:
        raise Unsupported(f"no coprimality test over {A}")  # pragma: no cover
    Ab = data.residue
    down = _coprime_values(Ab, data.project(a), data.project(c))
    if down is None:
        return None
    x, y = data.section(down[0]), data.section(down[1])
    # x a + y c = 1 mod J, a unit by Bass; rescale on the left
    u = A.add(A.mul(x, a), A.mul(y, c))
    ui = A.inverse(u)
    return A.mul(ui, x), A.mul(ui, y)


def check_coprime(A: MatrixRing, a, c) -> CoprimeCertificate:
    """Certificate (x, y) with x a + y c = 1; raises NotCoprime."""
    res = _coprime_values(A, a, c)
    if res is None:
        raise NotCoprime("A a + A c is a proper left ideal")
    cert = CoprimeCertificate(*res)
    if not cert.check(A, a, c):
        raise PostconditionViolation("coprime certificate failed to verify")
    return cert


def is_coprime(A: MatrixRing, a, c) -> bool:
    return _coprime_values(A, a, c) is not None


def _require(A, a, c, symmetric=True):
    if symmetric and not derive_symmetry(A, a, c):
        raise SymmetryViolation("a* c is not symmetric")
    if not is_coprime(A, a, c):
        raise NotCoprime("A a + A c is a proper left ideal")


def _closed_form(A: MatrixRing, a, c):
    if A.is_unit(a):
        return DivisionStep(A.zero, a, "closed-form: a unit")
    if a == A.zero and A.is_unit(c):
        return DivisionStep(A.one, A.neg(c), "closed-form: a = 0")
    return None


def _finish(A, a, c, s, method) -> DivisionStep:
    r = A.sub(a, A.mul(s, c))
    step = DivisionStep(s, r, method)
    if not (step.check(A, a, c) and A.is_unit(r)):
        raise PostconditionViolation(f"{method}: remainder is not a unit")
    return step


# ---------------------------------------------------------------------------
# symmetric candidates

def _symmetric_by_support(A: MatrixRing):
    """Symmetric matrices ordered by the number of nonzero involution orbits."""
    B = A.base
    z = B.zero
    fixed, pairs = A._orbits()
    orbits = [("f", pos, None, s) for pos, s in fixed] + [("p", pos, other, s) for pos, other, s in pairs]
    choices = []
    for kind, _pos, _other, s in orbits:
        pool = B.fixed_elements(s) if kind == "f" else B._element_list()
        choices.append([v for v in pool if v != z])
    n = A.n
    for k in range(len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), k):
            for vals in itertools.product(*(choices[o] for o in combo)):
                m = [[z] * n for _ in range(n)]
                for o, v in zip(combo, vals):
                    kind, pos, other, s = orbits[o]
                    m[pos[0]][pos[1]] = v
                    if kind == "p":
                        w = B.involute(v)
                        m[other[0]][other[1]] = w if s > 0 else B.neg(w)
                yield tuple(tuple(r) for r in m)


def symmetric_count(A: MatrixRing) -> int:
    B = A.base
    fixed, pairs = A._orbits()
    total = B.size() ** len(pairs)
    for _pos, s in fixed:
        total *= len(B.fixed_elements(s))
    return total


@lru_cache(maxsize=64)
def _sym_list(descriptor: str, A: MatrixRing) -> tuple:
    return tuple(_symmetric_by_support(A))


def symmetric_candidates(A: MatrixRing):
    if symmetric_count(A) <= SYM_CACHE_LIMIT:
        return _sym_list(A.descriptor(), A)
    return _symmetric_by_support(A)


def _search(A: MatrixRing, a, c, seed=DEFAULT_SEED, rounds=12, per_round=48):
    """First symmetric s with a - s c a unit, or None after an exhaustive/bounded search."""
    if A.base.finite:
        for s in symmetric_candidates(A):
            if A.is_unit(A.sub(a, A.mul(s, c))):
                return s, "support-sweep"
        return None
    rng = random.Random(seed)
    bound = 1
    for _ in range(rounds):
        for _ in range(per_round):
            s = A.random_symmetric(rng, bound)
            if A.is_unit(A.sub(a, A.mul(s, c))):
                return s, f"random-search(bound={bound})"
        bound *= 2
    return None


# ---------------------------------------------------------------------------
# algorithms

def divide_field_matrix(A: MatrixRing, a, c, seed=DEFAULT_SEED, check=True) -> DivisionStep:
    """Division over M(n, K), K a field or division ring, by closed forms then search."""
    if not A.base.is_division_ring:
        raise Unsupported(f"{A} is not a matrix ring over a division ring")
    if check:
        _require(A, a, c)
    step = _closed_form(A, a, c)
    if step is not None:
        return step
    found = _search(A, a, c, seed)
    if found is None:
        if A.base.finite:
            raise SearchExhausted("no symmetric s makes a - s c a unit")
        raise SearchExhausted("bounded random search failed")
    return _finish(A, a, c, found[0], found[1])


def divide_two_local(A: MatrixRing, a, c, check=True) -> DivisionStep:
    """Division over M(n, D x D) with the phi-flip transpose involution.

    Row-reduce a_1 by an invertible e, complete its row space with rows of
    c_1 selected by f so that e a_1 + f c_1 is invertible, and take
    s_1 = -e^-1 f; the second component of s is forced by symmetry.
    """
    B = A.base
    if not (isinstance(B, ProductRing) and B.left.is_division_ring):
        raise Unsupported(f"{A} is not a matrix ring over D x D")
    if check:
        _require(A, a, c)
    step = _closed_form(A, a, c)
    if step is not None:
        return step
    D, n = B.left, A.n
    a1, _ = linalg.split_product(a)
    c1, _ = linalg.split_product(c)
    e, ea, pivots = linalg.row_reduce(D, a1)
    k = len(pivots)
    basis = [list(row) for row in ea[:k]]
    chosen = []
    for j, row in enumerate(c1):
        if len(basis) == n:
            break
        trial = basis + [list(row)]
        if linalg.rank(D, trial) == len(trial):
            basis = trial
            chosen.append(j)
    if len(basis) < n:
        raise NotCoprime("rows of a_1 and c_1 do not span")
    f = [[D.zero] * n for _ in range(n)]
    for i, j in enumerate(chosen):
        f[k + i][j] = D.one
    f = tuple(map(tuple, f))
    A1 = MatrixRing(D, n)
    einv = A1.inverse(e)
    s1 = A1.neg(A1.mul(einv, f))
    # (s1|0) + (s1|0)* = (s1 | phi(s1)^t)
    half = linalg.join_product(s1, tuple(tuple(D.zero for _ in range(n)) for _ in range(n)))
    s = A.add(half, A.involute(half))
    return _finish(A, a, c, s, "two-local elimination")


def _char2_templates(D, finite_limit=None):
    """Parameter tuples for the three template shapes."""
    if D.finite:
        vals = D._element_list()
    else:
        vals = _small_candidates(D)
    z = D.zero
    for al in vals:
        for be in vals:
            yield "upper", ((al, be), (z, al))
    for al in vals:
        for ga in vals:
            yield "lower", ((al, z), (ga, al))
    for al in vals:
        yield "anti", ((z, al), (al, z))


def _small_candidates(D):
    out = [D.zero, D.one]
    gen = getattr(D, "t", None)
    if gen is None and hasattr(D, "poly"):
        gen = D.from_poly((D.field.zero, D.field.one))
    if gen is not None:
        g = gen
        for _ in range(3):
            out += [g, D.add(g, D.one)]
            g = D.mul(g, gen)
    return out


def _column_normalizer(H: MatrixRing, a):
    """Unit u0 with a u0 = [[x,0],[y,0]] for a rank-one 2x2 matrix a."""
    D = H.base
    z = D.zero
    col0 = (a[0][0], a[1][0])
    col1 = (a[0][1], a[1][1])
    if col0 == (z, z):
        return ((z, D.one), (D.one, z))
    # col1 = lam * col0 for a rank-one matrix over a field
    i = 0 if col0[0] != z else 1
    lam = D.mul(col1[i], D.inverse(col0[i]))
    return ((D.one, D.neg(lam)), (z, D.one))


def divide_char2_quat(H: MatrixRing, a, c, check=True) -> DivisionStep:
    """Division over split quaternions M(2, D), D a field of characteristic 2."""
    D = H.base
    if not (H.form == "J" and D.is_field):
        raise Unsupported(f"{H} is not SplitQuat over a field")
    if D.characteristic != 2:
        raise WrongCharacteristic(f"{D} does not have characteristic 2")
    if check and not is_coprime(H, a, c):
        raise NotCoprime("H a + H c is a proper left ideal")
    if H.is_unit(a):
        return DivisionStep(H.zero, a, "closed-form: a unit")
    if a == H.zero:
        return _finish(H, a, c, H.one, "template: identity")
    u0 = _column_normalizer(H, a)
    au = H.mul(a, u0)
    cu = H.mul(c, u0)
    for shape, s in _char2_templates(D):
        if H.is_unit(H.add(au, H.mul(s, cu))):
            return _finish(H, a, c, s, f"template: {shape}")
    raise SearchExhausted("no template yields a unit remainder")


def divide_lift(A: MatrixRing, a, c, seed=DEFAULT_SEED, check=True) -> DivisionStep:
    """Solve modulo the Jacobson radical, then lift s through the section."""
    data = local_data(A)
    if data.residue == A:
        raise Unsupported(f"{A} has zero radical; nothing to lift")
    if check:
        _require(A, a, c)
    Ab = data.residue
    down = _divide_step(Ab, data.project(a), data.project(c), seed)
    s = data.section(down.s)
    if not A.is_symmetric(s):
        raise SymmetryViolation("the section of a symmetric residue is not symmetric")
    r = A.sub(a, A.mul(s, c))
    if not data.is_unit(r):
        raise PostconditionViolation("lifted remainder is not a unit")
    return DivisionStep(s, r, f"lift({down.method})")


# ---------------------------------------------------------------------------
# dispatch

def _two_regular(R) -> bool:
    ch = R.characteristic
    return ch == 0 or ch % 2 == 1


def _divide_step(A: MatrixRing, a, c, seed=DEFAULT_SEED) -> DivisionStep:
    """Dispatch without re-checking hypotheses."""
    B = A.base
    if isinstance(B, MatrixRing):
        fm = A.flat_model()
        st = _divide_step(fm.ring, fm.to_flat(a), fm.to_flat(c), seed)
        return DivisionStep(fm.from_flat(st.s), fm.from_flat(st.r), f"flat:{st.method}")
    step = _closed_form(A, a, c)
    if step is not None:
        return step
    if A.form == "J" and _two_regular(B):
        return _split_quat_odd(A, a, c, seed)
    if A.form == "J" and B.is_field and B.characteristic == 2:
        return divide_char2_quat(A, a, c, check=False)
    if B.is_division_ring:
        return divide_field_matrix(A, a, c, seed, check=False)
    if isinstance(B, ProductRing) and B.left.is_division_ring:
        return divide_two_local(A, a, c, check=False)
    try:
        return divide_lift(A, a, c, seed, check=False)
    except SymmetryViolation:
        if not A.finite:
            raise
    found = _search(A, a, c, seed)
    if found is None:
        cert = _exhaust(A, a, c)
        raise NotStarEuclidean(f"no division step exists over {A}", certificate=cert)
    return _finish(A, a, c, found[0], "support-sweep (section not symmetric)")


def _split_quat_odd(A: MatrixRing, a, c, seed):
    """SplitQuat(R) with 2 regular: every symmetric element is scalar."""
    B = A.base
    if A.finite:
        found = _search(A, a, c, seed)
        if found is None:
            raise NotStarEuclidean(f"{A} admits no step for this pair", certificate=_exhaust(A, a, c))
        return _finish(A, a, c, found[0], found[1])
    # det(a - alpha c) has degree <= 2 in alpha
    if not B.commutative:
        raise Unsupported(f"{A}: noncommutative base")
    tried = []
    for k in range(3):
        alpha = B.from_int(k)
        r = A.sub(a, A.mul(A.scalar(alpha), c))
        if A.is_unit(r):
            return _finish(A, a, c, A.scalar(alpha), "scalar sweep")
        tried.append(k)
    raise NotStarEuclidean(
        f"det(a - alpha c) vanishes at alpha = {tried}; a quadratic with three roots is zero",
        witness=(a, c),
    )


def divide(A, a, c, seed=DEFAULT_SEED) -> DivisionChain:
    """Length-1 division chain for a pair meeting the hypotheses."""
    A, a, c = _unwrap(A, a, c)
    _require(A, a, c)
    step = _divide_step(A, a, c, seed)
    chain = DivisionChain(A, a, c, (step,))
    if not chain.verify():
        raise PostconditionViolation("division chain failed to verify")
    return chain


def divide_iterated(A, a, c, step_fn=None, cap=MAX_CHAIN) -> DivisionChain:
    """Apply step_fn to (r_{i-1}, r_i) until the remainder is a unit."""
    A, a, c = _unwrap(A, a, c)
    _require(A, a, c)
    step_fn = step_fn or (lambda x, y: _divide_step(A, x, y))
    prev, cur = a, c
    steps = []
    for _ in range(cap):
        st = step_fn(prev, cur)
        steps.append(st)
        if A.is_unit(st.r):
            chain = DivisionChain(A, a, c, tuple(steps))
            if not chain.verify():
                raise PostconditionViolation("iterated chain failed to verify")
            return chain
        prev, cur = cur, st.r
    raise CapExceeded(f"no unit remainder after {cap} steps")


def _unwrap(A, a, c):
    if isinstance(a, Element):
        A = a.ring
        if c.ring != A:
            raise SymmetryViolation("a and c live in different rings")  # pragma: no cover
        return A, a.value, c.value
    A = as_ring(A)
    if isinstance(a, str):
        a, c = A.parse(a), A.parse(c)
    return A, a, c


# ---------------------------------------------------------------------------
# certificates

def _exhaust(A: MatrixRing, a, c) -> ExhaustionCertificate:
    count = units = 0
    scalar_only = True
    for s in _symmetric_by_support(A):
        count += 1
        if any(s[i][j] != A.base.zero for i in range(A.n) for j in range(A.n) if i != j) or any(
            s[i][i] != s[0][0] for i in range(A.n)
        ):
            scalar_only = False
        if A.is_unit(A.sub(a, A.mul(s, c))):
            units += 1
    base_size = A.base.size() if A.base.finite and not isinstance(A.base, MatrixRing) else None
    return ExhaustionCertificate(A.descriptor(), a, c, count, units, base_size, scalar_only)


def certify_not_star_euclidean(A, a, c) -> ExhaustionCertificate:
    """Enumerate all symmetric s and certify a - s c is never a unit."""
    A, a, c = _unwrap(A, a, c)
    if not A.finite:
        raise Unsupported("exhaustion needs a finite ring")
    if not derive_symmetry(A, a, c):
        raise HypothesesNotMet("a* c is not symmetric")
    try:
        cop = check_coprime(A, a, c)
    except NotCoprime:
        raise HypothesesNotMet("a and c are not coprime") from None
    for s in _symmetric_by_support(A):
        if A.is_unit(A.sub(a, A.mul(s, c))):
            raise NotCertified("a division step exists", witness=s)
    cert = _exhaust(A, a, c)
    return ExhaustionCertificate(cert.descriptor, a, c, cert.symmetric_count, cert.unit_remainders,
                                 cert.base_size, cert.scalar_only, cop)


def counterexample_pair(A: MatrixRing):
    """The pair a = [[1,0],[1,0]], c = [[0,1],[0,1]] in SplitQuat(R)."""
    R = A.base
    o, z = R.one, R.zero
    return ((o, z), (o, z)), ((z, o), (z, o))


__all__ = [
    "CoprimeCertificate", "DivisionStep", "DivisionChain", "ExhaustionCertificate",
    "check_coprime", "is_coprime", "derive_symmetry", "divide_field_matrix", "divide_two_local",
    "divide_char2_quat", "divide_lift", "divide", "divide_iterated", "certify_not_star_euclidean",
    "symmetric_candidates", "symmetric_count", "counterexample_pair", "DEFAULT_SEED",
]
