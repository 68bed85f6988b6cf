"""Finite-support adelic matrices and the local-global division assembly.

An adele is stored in the rational model: explicit global-field matrices at
a finite place set S and one integral tail matrix standing for every place
outside S.  Division solves each place of S over the global field, solves
the tail over the integer ring, and checks a = s c + r everywhere.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    InvalidParameter,
    NotCoprime,
    NotStarEuclidean,
    ParseError,
    PostconditionViolation,
    SymmetryViolation,
    TailUnsolved,
    Unsupported,
)
from .euclid import DEFAULT_SEED, certify_not_star_euclidean, counterexample_pair, divide
from .rings import MatrixRing, ring as as_ring
from .rings.base import Ring
from .rings.literals import split_top
from .rings.matrix import SplitQuat
from .rings.scalar import (
    Integers,
    PolyRing,
    ProductRing,
    QuadraticExtension,
    RationalFunctionField,
    Rationals,
    is_prime,
    p_is_irreducible,
)

TAIL_BOX = (1, 2, 4, 8)
TAIL_POLY_DEGREES = (1, 2, 3)
TAIL_CANDIDATE_CAP = 200_000


# ---------------------------------------------------------------------------
# places and splitting

class SplittingType(str, enum.Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class Place:
    """A place of Q (prime or infinity) or of F_q(t) (monic irreducible or infinity).

    ``value`` is the prime, the low-to-high coefficient tuple, or None for
    the infinite place.
    """

    field: str
    value: object
    label: str

    @property
    def infinite(self) -> bool:
        return self.value is None

    def sort_key(self):
        if self.value is None:
            return (1, 0, ())
        if isinstance(self.value, int):
            return (0, self.value, ())
        return (0, len(self.value), tuple(str(c) for c in self.value))

    def __str__(self):
        return self.label


def make_place(field: Ring, token) -> Place:
    """Build and validate a place of ``field`` from an int, a string or None."""
    desc = field.descriptor()
    if token is None or (isinstance(token, str) and token.strip() in ("inf", "oo", "∞")):
        return Place(desc, None, "inf")
    if isinstance(field, Rationals):
        try:
            p = int(token)
        except (TypeError, ValueError):
            raise InvalidParameter(f"place {token!r} of Q must be a prime") from None
        if not is_prime(p):
            raise InvalidParameter(f"{p} is not prime")
        return Place(desc, p, str(p))
    if isinstance(field, RationalFunctionField):
        P = field.poly
        f = P.parse(token) if isinstance(token, str) else tuple(token)
        if not f or f[-1] != field.field.one:
            raise InvalidParameter(f"place {token!r} is not monic")
        if not p_is_irreducible(field.field, f):
            raise InvalidParameter(f"{P.format(f)} is not irreducible")
        return Place(desc, f, P.format(f))
    raise Unsupported(f"no places for {field}")


def _legendre(d: int, p: int) -> int:
    return pow(d % p, (p - 1) // 2, p)


def quad_splitting(d: int, p: int) -> SplittingType:
    """How the prime p behaves in Q(sqrt d), d square-free."""
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if p == 2:
        if d % 8 == 1:
            return SplittingType.SPLIT
        if d % 8 == 5:
            return SplittingType.INERT
        return SplittingType.RAMIFIED
    if d % p == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if _legendre(d, p) == 1 else SplittingType.INERT


def place_splitting(d: int, place: Place) -> SplittingType:
    if place.infinite:
        # two real embeddings when d > 0, one complex place otherwise
        return SplittingType.SPLIT if d > 0 else SplittingType.RAMIFIED
    return quad_splitting(d, place.value)


def splitting_counts(d: int, bound: int) -> dict:
    counts = {t.value: 0 for t in SplittingType}
    for p in range(2, bound + 1):
        if is_prime(p):
            counts[quad_splitting(d, p).value] += 1
    return counts


# ---------------------------------------------------------------------------
# models

def _map_leaves(R: Ring, f, x):
    if isinstance(R, MatrixRing):
        return tuple(tuple(_map_leaves(R.base, f, e) for e in row) for row in x)
    return f(x)


def _leaves(R: Ring, x):
    if isinstance(R, MatrixRing):
        for row in x:
            for e in row:
                yield from _leaves(R.base, e)
    else:
        yield x


class AdelicModel:
    """Global field K, integer ring O and the matrix rings an adele lives in.

    kinds: ``rational`` (Q), ``function`` (F_q(t)), ``quad`` (Q(sqrt d) with
    the Galois involution) and ``quaternion`` (split quaternions over Q or
    F_2(t) with the J-involution).
    """

    def __init__(self, base: str, n: int):
        if n < 1:
            raise InvalidParameter("n must be positive")
        self.n = n
        text = base.replace(" ", "")
        self.d = None
        if text.startswith("SplitQuat(") and text.endswith(")"):
            self.kind = "quaternion"
            F = as_ring(text[len("SplitQuat("):-1])
            if not isinstance(F, (Rationals, RationalFunctionField)):
                raise Unsupported("quaternion adeles need Q or F_q(t)")
            if isinstance(F, RationalFunctionField) and F.field.size() != 2:
                raise Unsupported("the quaternion function-field model fixes q = 2")
            self.field = F
            O = Integers() if isinstance(F, Rationals) else F.poly
            self.global_ring = self._quat_ring(F)
            self.tail_ring = self._quat_ring(O)
            self.integers = O
        else:
            K = as_ring(text)
            if isinstance(K, QuadraticExtension) and K.d is not None:
                self.kind = "quad"
                self.d = K.d
                self.field = Rationals()
                self.global_ring = MatrixRing(K, n)
                self.tail_ring = self.global_ring
                self.integers = None
                self.split_ring = MatrixRing(ProductRing(Rationals(), Rationals()), n)
            elif isinstance(K, Rationals):
                self.kind = "rational"
                self.field = K
                self.integers = Integers()
            elif isinstance(K, RationalFunctionField):
                if K.field.size() not in (2, 3, 4):
                    raise Unsupported("function-field adeles support q in {2,3,4}")
                self.kind = "function"
                self.field = K
                self.integers = K.poly
            else:
                raise Unsupported(f"no adelic model over {K}")
            if self.kind != "quad":
                self.global_ring = MatrixRing(K, n)
                self.tail_ring = MatrixRing(self.integers, n)
        self.base = text

    def _quat_ring(self, F: Ring) -> MatrixRing:
        H = SplitQuat(F)
        return H if self.n == 1 else MatrixRing(H, self.n)

    def descriptor(self) -> str:
        return f"Adele({self.base},n={self.n})"

    def __eq__(self, other):
        return isinstance(other, AdelicModel) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    # -- places -------------------------------------------------------
    @property
    def place_field(self) -> Ring:
        return self.field if self.kind != "quad" else Rationals()

    def place(self, token) -> Place:
        return make_place(self.place_field, token)

    def splitting(self, v: Place) -> SplittingType:
        if self.kind == "quad":
            return place_splitting(self.d, v)
        return SplittingType.SPLIT if self.kind == "quaternion" else SplittingType.INERT

    def component_ring(self, v: Place) -> MatrixRing:
        if self.kind == "quad" and self.splitting(v) == SplittingType.SPLIT:
            return self.split_ring
        return self.global_ring

    # -- tails --------------------------------------------------------
    def _to_field(self, x):
        if isinstance(self.integers, Integers):
            return Fraction(x)
        if isinstance(self.integers, PolyRing):
            return self.field.from_poly(x)
        return x

    def globalize(self, tail):
        """Tail value as a global-field matrix."""
        return _map_leaves(self.tail_ring, self._to_field, tail)

    def embed_tail(self, tail, v: Place):
        """The tail as a component at v, or None if it has no exact model there."""
        g = self.globalize(tail)
        if self.component_ring(v) is self.global_ring:
            return g
        # split place of Q(sqrt d): rational entries embed diagonally
        if any(x[1] != 0 for x in _leaves(self.global_ring, g)):
            return None
        return tuple(tuple((x[0], x[0]) for x in row) for row in g)

    def tail_is_integral(self, tail) -> bool:
        if self.kind == "quad":
            return all(_is_quad_integer(self.d, x) for x in _leaves(self.tail_ring, tail))
        return self.tail_ring.contains(tail)

    def tail_is_unit(self, tail) -> bool:
        """Unit determinant in the integer ring, so a unit at every finite place."""
        if self.kind == "quad":
            det = self.global_ring.det(tail)
            if not _is_quad_integer(self.d, det):
                return False
            return abs(self.global_ring.base.norm(det)) == 1
        return self.tail_ring.is_unit(tail)

    def normalize_tail(self, tail):
        if self.kind in ("rational", "quaternion") and isinstance(self.integers, Integers):
            def to_int(x):
                x = Fraction(x)
                if x.denominator != 1:
                    raise InvalidParameter(f"tail entry {x} is not integral")
                return int(x)
            return _map_leaves(self.tail_ring, to_int, tail)
        return tail


def _is_quad_integer(d: int, x) -> bool:
    a, b = Fraction(x[0]), Fraction(x[1])
    return (2 * a).denominator == 1 and (a * a - d * b * b).denominator == 1


@lru_cache(maxsize=None)
def adelic_model(base: str, n: int = 2) -> AdelicModel:
    return AdelicModel(base, n)


# ---------------------------------------------------------------------------
# adelic matrices

@dataclass(frozen=True)
class AdelicMatrix:
    """Components at the places of S plus an integral tail elsewhere."""

    model: AdelicModel
    components: tuple
    tail: object

    @classmethod
    def build(cls, model: AdelicModel, components: dict, tail) -> "AdelicMatrix":
        tail = model.normalize_tail(tail)
        if not model.tail_is_integral(tail):
            raise InvalidParameter("tail entries must be integral")
        comps = []
        for v, m in components.items():
            if not isinstance(v, Place):
                v = model.place(v)
            R = model.component_ring(v)
            m = _coerce(R, m)
            if not R.contains(m):
                raise InvalidParameter(f"component at {v} is not in {R}")
            if m != model.embed_tail(tail, v):
                comps.append((v, m))
        comps.sort(key=lambda vm: vm[0].sort_key())
        return cls(model, tuple(comps), tail)

    @property
    def support(self) -> tuple:
        return tuple(v for v, _ in self.components)

    @property
    def n(self) -> int:
        return self.model.n

    def at(self, v: Place):
        for w, m in self.components:
            if w == v:
                return m
        m = self.model.embed_tail(self.tail, v)
        if m is None:
            raise Unsupported(f"tail has no rational model at the split place {v}")
        return m

    def format(self) -> str:
        parts = [f"{v}: {self.model.component_ring(v).format(m)}" for v, m in self.components]
        parts.append(f"tail: {self.model.tail_ring.format(self.tail)}")
        return "{" + ", ".join(parts) + "}"

    def __str__(self):
        return self.format()


def _coerce(R: Ring, m):
    """Accept ints for rational entries."""
    if isinstance(R.base, Rationals) if isinstance(R, MatrixRing) else False:
        return _map_leaves(R, Fraction, m)
    return m


def scalar_adele(model: AdelicModel, k: int) -> AdelicMatrix:
    T = model.tail_ring
    return AdelicMatrix.build(model, {}, T.scalar(T.base.from_int(k)))


def identity_adele(model: AdelicModel) -> AdelicMatrix:
    return AdelicMatrix.build(model, {}, model.tail_ring.one)


def zero_adele(model: AdelicModel) -> AdelicMatrix:
    return AdelicMatrix.build(model, {}, model.tail_ring.zero)


def parse_adele(model: AdelicModel, text: str) -> AdelicMatrix:
    """Parse ``{2: [[...]], 3: [[...]], tail: [[...]]}``."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError("adelic literal must be enclosed in braces", text, 0)
    comps, tail = {}, None
    for item in split_top(body[1:-1], ","):
        if not item.strip():
            continue
        key, sep, val = item.partition(":")
        if not sep:
            raise ParseError("expected 'place: matrix'", text, text.find(item))
        key = key.strip()
        if key == "tail":
            tail = model.tail_ring.parse(val.strip())
        else:
            v = model.place(key)
            comps[v] = model.component_ring(v).parse(val.strip())
    if tail is None:
        raise ParseError("adelic literal needs a tail", text, len(text))
    return AdelicMatrix.build(model, comps, tail)


def _same_model(x: AdelicMatrix, y: AdelicMatrix):
    if x.model != y.model:
        raise InvalidParameter(f"{x.model.descriptor()} vs {y.model.descriptor()}")


def _union(*xs: AdelicMatrix) -> list:
    seen = {}
    for x in xs:
        for v in x.support:
            seen[v] = None
    return sorted(seen, key=Place.sort_key)


def adelic_op(x: AdelicMatrix, y: AdelicMatrix, op: str) -> AdelicMatrix:
    """Componentwise add/sub/mul on the union of supports and on the tails."""
    _same_model(x, y)
    if op not in ("add", "sub", "mul"):
        raise InvalidParameter(f"unknown op {op!r}")
    M = x.model
    comps = {}
    for v in _union(x, y):
        R = M.component_ring(v)
        comps[v] = getattr(R, op)(x.at(v), y.at(v))
    tail = getattr(M.tail_ring, op)(x.tail, y.tail)
    return AdelicMatrix.build(M, comps, tail)


def adelic_involute(x: AdelicMatrix) -> AdelicMatrix:
    M = x.model
    comps = {v: M.component_ring(v).involute(m) for v, m in x.components}
    return AdelicMatrix.build(M, comps, M.tail_ring.involute(x.tail))


def adelic_is_symmetric(x: AdelicMatrix) -> bool:
    return adelic_involute(x) == x


def support_split(a: AdelicMatrix, places) -> tuple[AdelicMatrix, AdelicMatrix]:
    """(a_S, a^S): a on S and 1 elsewhere, and 1 on S and a elsewhere."""
    M = a.model
    S = [p if isinstance(p, Place) else M.place(p) for p in places]
    missing = [v for v in a.support if v not in S]
    if missing:
        raise InvalidParameter(f"places {', '.join(map(str, missing))} are not covered")
    a_S = AdelicMatrix.build(M, {v: a.at(v) for v in S}, M.tail_ring.one)
    a_rest = AdelicMatrix.build(M, {v: M.component_ring(v).one for v in S}, a.tail)
    return a_S, a_rest


# ---------------------------------------------------------------------------
# division

@dataclass(frozen=True)
class AdelicDivision:
    a: AdelicMatrix
    c: AdelicMatrix
    s: AdelicMatrix
    r: AdelicMatrix
    methods: tuple
    tail_method: str

    def __iter__(self):
        return iter((self.s, self.r))

    def verify(self) -> bool:
        M = self.a.model
        for v in _union(self.a, self.c, self.s, self.r):
            R = M.component_ring(v)
            if R.add(R.mul(self.s.at(v), self.c.at(v)), self.r.at(v)) != self.a.at(v):
                return False
            if not R.is_unit(self.r.at(v)):
                return False
            if not R.is_symmetric(self.s.at(v)):
                return False
        T = M.tail_ring
        if T.add(T.mul(self.s.tail, self.c.tail), self.r.tail) != self.a.tail:
            return False
        return M.tail_is_unit(self.r.tail) and T.is_symmetric(self.s.tail)

    def records(self) -> list[tuple[str, str]]:
        out = [("s", self.s.format()), ("r", self.r.format())]
        out += [(f"method[{v}]", m) for v, m in self.methods]
        out.append(("method[tail]", self.tail_method))
        return out


def _box(R: Ring, size: int) -> list:
    """Small elements of an integer ring, zero first."""
    if isinstance(R, Integers):
        return [0] + [s * k for k in range(1, size + 1) for s in (1, -1)]
    if isinstance(R, PolyRing):
        F = R.field
        out = [()]
        for deg in range(size):
            for coeffs in itertools.product(F._element_list(), repeat=deg):
                for lead in F._element_list():
                    if lead != F.zero:
                        out.append(tuple(coeffs) + (lead,))
        return out
    if isinstance(R, MatrixRing):
        inner = _box(R.base, size)
        return [tuple(tuple(vals[i * R.n:(i + 1) * R.n]) for i in range(R.n))
                for vals in itertools.product(inner, repeat=R.n * R.n)]
    raise Unsupported(f"no bounded box for {R}")


def _symmetric_box(T: MatrixRing, size: int):
    """Symmetric matrices over T with entries drawn from the size box."""
    B = T.base
    box = _box(B, size)
    fixed, pairs = T._orbits()
    choices = []
    for _pos, s in fixed:
        choices.append([x for x in box if x == (B.involute(x) if s > 0 else B.neg(B.involute(x)))])
    for _ in pairs:
        choices.append(box)
    total = math.prod(len(c) for c in choices)
    if total > TAIL_CANDIDATE_CAP:
        return None
    z = B.zero

    def gen():
        for combo in itertools.product(*choices):
            m = [[z] * T.n for _ in range(T.n)]
            for (pos, _s), v in zip(fixed, combo):
                m[pos[0]][pos[1]] = v
            for (pos, other, s), v in zip(pairs, combo[len(fixed):]):
                m[pos[0]][pos[1]] = v
                w = B.involute(v)
                m[other[0]][other[1]] = w if s > 0 else B.neg(w)
            yield tuple(tuple(r) for r in m)

    return gen()


def _minors_gcd_one(M: AdelicModel, a, c) -> bool:
    """A a + A c = A over a PID iff the maximal minors of [a; c] generate (1)."""
    O = M.integers
    n = M.n
    stacked = tuple(a) + tuple(c)
    Mn = MatrixRing(O, n)
    g = O.zero
    for rows in itertools.combinations(range(2 * n), n):
        det = Mn.det(tuple(stacked[i] for i in rows))
        g = _gcd(O, g, det)
        if O.is_unit(g):
            return True
    return O.is_unit(g)


def _gcd(O: Ring, x, y):
    if isinstance(O, Integers):
        return math.gcd(x, y)
    while y != O.zero:
        x, y = y, O.divmod(x, y)[1]
    return x


def _tail_divide(M: AdelicModel, a, c):
    T = M.tail_ring
    if not T.is_symmetric(T.mul(T.involute(a), c)):
        raise SymmetryViolation("tail: a* c is not symmetric")
    if M.kind in ("rational", "function") and not _minors_gcd_one(M, a, c):
        raise NotCoprime("tail pair is not coprime over the integer ring")
    if M.tail_is_unit(a):
        return T.zero, a, "closed-form: a unit"
    if a == T.zero and M.tail_is_unit(c):
        return T.one, T.neg(c), "closed-form: a = 0"
    if M.kind == "quad":
        raise TailUnsolved("tail over the quadratic integers is limited to the closed forms")
    sizes = TAIL_BOX if isinstance(M.integers, Integers) else TAIL_POLY_DEGREES
    for size in sizes:
        cands = _symmetric_box(T, size)
        if cands is None:
            break
        for s in cands:
            r = T.sub(a, T.mul(s, c))
            if M.tail_is_unit(r):
                return s, r, f"bounded search (box {size})"
    raise TailUnsolved("no integral symmetric s in the search box gives a unit remainder")


def _place_divide(M: AdelicModel, v: Place, a, c, seed):
    R = M.component_ring(v)
    try:
        chain = divide(R, a, c, seed)
    except NotCoprime as exc:
        raise NotCoprime(f"place {v}: {exc}") from None
    except SymmetryViolation as exc:
        raise SymmetryViolation(f"place {v}: {exc}") from None
    step = chain.steps[0]
    return step.s, step.r, step.method


def _assemble(a: AdelicMatrix, c: AdelicMatrix, seed) -> AdelicDivision:
    _same_model(a, c)
    M = a.model
    s_comps, r_comps, methods = {}, {}, []
    for v in _union(a, c):
        s_v, r_v, how = _place_divide(M, v, a.at(v), c.at(v), seed)
        s_comps[v], r_comps[v] = s_v, r_v
        methods.append((v, how))
    s_t, r_t, tail_how = _tail_divide(M, a.tail, c.tail)
    s = AdelicMatrix.build(M, s_comps, s_t)
    r = AdelicMatrix.build(M, r_comps, r_t)
    out = AdelicDivision(a, c, s, r, tuple((str(v), m) for v, m in methods), tail_how)
    if not out.verify():
        raise PostconditionViolation("assembled division does not verify")
    return out


def adelic_divide(a: AdelicMatrix, c: AdelicMatrix, seed=DEFAULT_SEED) -> AdelicDivision:
    """Division over M(n, A_K) for K = Q or F_q(t) with the transpose involution."""
    if a.model.kind not in ("rational", "function"):
        raise Unsupported("adelic_divide handles Q and F_q(t); use the quad/quat variants")
    return _assemble(a, c, seed)


def quad_adelic_divide(a: AdelicMatrix, c: AdelicMatrix, seed=DEFAULT_SEED) -> AdelicDivision:
    """Division over M(n, A_E), E = Q(sqrt d): two-local at split places, field solve elsewhere."""
    if a.model.kind != "quad":
        raise Unsupported("quad_adelic_divide needs a Quad(Q,d) model")
    return _assemble(a, c, seed)


WITNESS_PLACE = 2
WITNESS_TRUNCATION = "SplitQuat(Z/(9))"


def quaternion_witness(model: AdelicModel):
    """The non-divisible pair at one split place, with its finite exhaustion certificate."""
    H = SplitQuat(model.field)
    a0, c0 = counterexample_pair(H)

    def spread(x):
        if model.n == 1:
            return x
        return tuple(tuple(x if i == j else H.zero for j in range(model.n)) for i in range(model.n))

    v = model.place(WITNESS_PLACE)
    a = AdelicMatrix.build(model, {v: spread(a0)}, model.tail_ring.one)
    c = AdelicMatrix.build(model, {v: spread(c0)}, model.tail_ring.zero)
    T = as_ring(WITNESS_TRUNCATION)
    ta, tc = counterexample_pair(T)
    cert = certify_not_star_euclidean(T, ta, tc)
    return (a, c), cert


def quat_adelic_divide(a: AdelicMatrix, c: AdelicMatrix, seed=DEFAULT_SEED) -> AdelicDivision:
    """Division over the split-quaternion adeles; only characteristic 2 admits it."""
    M = a.model
    if M.kind != "quaternion":
        raise Unsupported("quat_adelic_divide needs a SplitQuat(F) model")
    if M.field.characteristic != 2:
        witness, cert = quaternion_witness(M)
        raise NotStarEuclidean(
            "split-quaternion adeles in characteristic != 2 are not *-Euclidean",
            certificate=cert, witness=witness,
        )
    return _assemble(a, c, seed)


def divide_adelic(a: AdelicMatrix, c: AdelicMatrix, seed=DEFAULT_SEED) -> AdelicDivision:
    kind = a.model.kind
    if kind == "quad":
        return quad_adelic_divide(a, c, seed)
    if kind == "quaternion":
        return quat_adelic_divide(a, c, seed)
    return adelic_divide(a, c, seed)


__all__ = [
    "SplittingType", "Place", "make_place", "quad_splitting", "place_splitting", "splitting_counts",
    "AdelicModel", "adelic_model", "AdelicMatrix", "parse_adele", "identity_adele", "zero_adele",
    "scalar_adele", "adelic_op", "adelic_involute", "adelic_is_symmetric", "support_split",
    "AdelicDivision", "adelic_divide", "quad_adelic_divide", "quat_adelic_divide",
    "quaternion_witness", "divide_adelic",
]
