"""SL_*(2, A) and GL_*(2, A): relations, Bruhat words, factorisation, closure.

A group element is a 2 x 2 matrix ``((a, b), (c, d))`` of values of A.  The
involution on M(2, A) is the *-transpose induced from A.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import euclid
from .errors import (
    CapExceeded,
    NoUnitEntry,
    NotGLStar,
    NotSLStar,
    NotSymmetric,
    NotUnit,
    ParseError,
    SearchExhausted,
    Unsupported,
    VerificationFailed,
)
from .rings import MatrixRing, ring as as_ring
from .rings.base import Ring
from .rings.literals import split_top
from .rings.scalar import ProductRing

DEFAULT_CAP = 10**7

RELATIONS = ("ad*-bc*=1", "a*d-c*b=1", "ab* symmetric", "cd* symmetric", "a*c symmetric", "b*d symmetric")


@lru_cache(maxsize=64)
def _m2(descriptor: str, A: Ring) -> MatrixRing:
    return MatrixRing(A, 2)


def m2(A: Ring) -> MatrixRing:
    """M(2, A) with the *-transpose involution."""
    return _m2(A.descriptor(), A)


def J(A: Ring):
    return ((A.zero, A.one), (A.neg(A.one), A.zero))


def J_inv(A: Ring):
    return ((A.zero, A.neg(A.one)), (A.one, A.zero))


# ---------------------------------------------------------------------------
# relations

def det_star(A: Ring, g):
    (a, b), (c, d) = g
    return A.sub(A.mul(a, A.involute(d)), A.mul(b, A.involute(c)))


def sl_star_violation(A: Ring, g) -> str | None:
    """Name of the first violated defining relation, or None."""
    (a, b), (c, d) = g
    inv, mul, one = A.involute, A.mul, A.one
    sym = A.is_symmetric
    checks = (
        lambda: A.sub(mul(a, inv(d)), mul(b, inv(c))) == one,
        lambda: A.sub(mul(inv(a), d), mul(inv(c), b)) == one,
        lambda: sym(mul(a, inv(b))),
        lambda: sym(mul(c, inv(d))),
        lambda: sym(mul(inv(a), c)),
        lambda: sym(mul(inv(b), d)),
    )
    for name, check in zip(RELATIONS, checks):
        if not check():
            return name
    return None


def is_sl_star(A: Ring, g) -> bool:
    return sl_star_violation(A, g) is None


def multiplier(A: Ring, g):
    """delta with g* J g = delta J; raises NotGLStar."""
    M = m2(A)
    m = M.mul(M.mul(M.involute(g), J(A)), g)
    z = A.zero
    delta = m[0][1]
    if m[0][0] != z or m[1][1] != z or m[1][0] != A.neg(delta):
        raise NotGLStar("g* J g is not a multiple of J")
    if not (A.is_unit(delta) and A.is_symmetric(delta) and A.is_central(delta)):
        raise NotGLStar("multiplier is not a central invertible symmetric element")
    return delta


def group_mul(A: Ring, g, h):
    return m2(A).mul(g, h)


def group_inv(A: Ring, g):
    """J^-1 g* J, the inverse of an SL_* element."""
    M = m2(A)
    return M.mul(M.mul(J_inv(A), M.involute(g)), J(A))


def identity(A: Ring):
    return m2(A).one


# ---------------------------------------------------------------------------
# Bruhat elements

def bruhat_h(A: Ring, a):
    if not A.is_unit(a):
        raise NotUnit("h_a needs a unit")
    return ((A.involute(a), A.zero), (A.zero, A.inverse(a)))


def bruhat_u(A: Ring, b):
    if not A.is_symmetric(b):
        raise NotSymmetric("u_b needs a symmetric b")
    return ((A.one, b), (A.zero, A.one))


def bruhat_w(A: Ring):
    return J(A)


def bruhat_w_inv(A: Ring):
    return J_inv(A)


@dataclass(frozen=True)
class BruhatWord:
    """Tokens ("H", a), ("U", b), ("W", None), ("Winv", None).

    The word evaluates to the left-to-right product of its tokens.
    """

    tokens: tuple = ()

    def __add__(self, other: "BruhatWord") -> "BruhatWord":
        return BruhatWord(self.tokens + other.tokens)

    def __len__(self):
        return len(self.tokens)

    def evaluate(self, A: Ring):
        M = m2(A)
        acc = M.one
        for kind, val in self.tokens:
            acc = M.mul(acc, token_matrix(A, kind, val))
        return acc

    def well_formed(self, A: Ring) -> bool:
        for kind, val in self.tokens:
            if kind == "H" and not A.is_unit(val):
                return False
            if kind == "U" and not A.is_symmetric(val):
                return False
        return True

    def simplify(self, A: Ring) -> "BruhatWord":
        """Drop trivial tokens and cancel W Winv pairs."""
        out = []
        for kind, val in self.tokens:
            if (kind == "H" and val == A.one) or (kind == "U" and val == A.zero):
                continue
            if out and {out[-1][0], kind} == {"W", "Winv"}:
                out.pop()
                continue
            if out and kind == "U" and out[-1][0] == "U":
                merged = A.add(out[-1][1], val)
                out.pop()
                if merged != A.zero:
                    out.append(("U", merged))
                continue
            out.append((kind, val))
        return BruhatWord(tuple(out))

    def serialize(self, A: Ring) -> str:
        if not self.tokens:
            return "1"
        parts = []
        for kind, val in self.tokens:
            parts.append(kind if val is None else f"{kind}{A.format(val)}")
        return " . ".join(parts)

    @classmethod
    def parse(cls, A: Ring, text: str) -> "BruhatWord":
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        tokens = []
        for part in split_top(text.replace(" . ", "."), "."):
            part = part.strip()
            if part in ("W", "Winv"):
                tokens.append((part, None))
            elif part[:1] in ("H", "U"):
                tokens.append((part[0], A.parse(part[1:])))
            else:
                raise ParseError("unknown Bruhat token", text, text.find(part))
        return cls(tuple(tokens))


def token_matrix(A: Ring, kind, val):
    if kind == "H":
        return bruhat_h(A, val)
    if kind == "U":
        return bruhat_u(A, val)
    if kind == "W":
        return bruhat_w(A)
    if kind == "Winv":
        return bruhat_w_inv(A)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# factorisation

W, WINV = ("W", None), ("Winv", None)


def _core_word(A: Ring, g) -> BruhatWord:
    """g = w^-1 h_a^-1 u_{-a*c} w u_{a^-1 b} for a unit top-left block a."""
    (a, b), (c, _d) = g
    ai = A.inverse(a)
    return BruhatWord((
        WINV,
        ("H", ai),
        ("U", A.neg(A.mul(A.involute(a), c))),
        W,
        ("U", A.mul(ai, b)),
    ))


def factor_unit_corner(A: Ring, g) -> BruhatWord:
    """Bruhat word for g when one of its blocks is a unit."""
    M = m2(A)
    (a, b), (c, d) = g
    w = bruhat_w(A)
    if A.is_unit(a):
        word = _core_word(A, g)
    elif A.is_unit(b):
        # g w has top-left -b
        word = _core_word(A, M.mul(g, w)) + BruhatWord((WINV,))
    elif A.is_unit(c):
        # w g has top-left c
        word = BruhatWord((WINV,)) + _core_word(A, M.mul(w, g))
    elif A.is_unit(d):
        # w g w has top-left -d
        word = BruhatWord((WINV,)) + _core_word(A, M.mul(M.mul(w, g), w)) + BruhatWord((WINV,))
    else:
        raise NoUnitEntry("no block of g is a unit")
    word = word.simplify(A)
    if word.evaluate(A) != g or not word.well_formed(A):
        raise VerificationFailed("unit-corner word does not evaluate to g")
    return word


def factor(A: Ring, g, seed=euclid.DEFAULT_SEED) -> BruhatWord:
    """Bruhat word for g in SL_*(2, A), dividing (a, c) when no block is a unit."""
    bad = sl_star_violation(A, g)
    if bad is not None:
        raise NotSLStar(f"relation {bad} fails")
    (a, b), (c, d) = g
    if any(A.is_unit(x) for x in (a, b, c, d)):
        return factor_unit_corner(A, g)
    if not isinstance(A, MatrixRing):
        raise Unsupported(f"division over {A} is not implemented")
    chain = euclid.divide(A, a, c, seed)
    s = chain.steps[0].s
    M = m2(A)
    rest = M.mul(bruhat_u(A, A.neg(s)), g)
    word = BruhatWord((("U", s),)) + factor_unit_corner(A, rest)
    if word.evaluate(A) != g:
        raise VerificationFailed("factored word does not evaluate to g")
    return word


def factor_path(A: Ring, g) -> str:
    """Which route factor() takes for g: unit-corner or divide."""
    (a, b), (c, d) = g
    return "unit-corner" if any(A.is_unit(x) for x in (a, b, c, d)) else "divide"


def make_nonunit_example(A: Ring) -> BruhatWord:
    """Word u_b1 w u_b2 w^-1 u_b3 whose value has four non-unit blocks."""
    sym = _symmetric_list(A)
    for b1, b2, b3 in itertools.product(sym, repeat=3):
        # u_b1 w u_b2 w^-1 u_b3 = [[1-b1b2, (1-b1b2)b3+b1], [-b2, 1-b2b3]]
        word = BruhatWord((("U", b1), W, ("U", b2), WINV, ("U", b3)))
        g = word.evaluate(A)
        if not any(A.is_unit(x) for row in g for x in row):
            return word
    raise SearchExhausted(f"every u w u w^-1 u product over {A} has a unit block")


def _symmetric_list(A: Ring) -> list:
    if isinstance(A, MatrixRing):
        return list(euclid.symmetric_candidates(A))
    return A.symmetric_elements()


# ---------------------------------------------------------------------------
# finite groups

@dataclass(frozen=True)
class ClosureResult:
    elements: frozenset
    size: int
    exhausted: bool
    generators: int


def bruhat_generators(A: Ring) -> list:
    gens = [bruhat_h(A, a) for a in A.units()]
    gens += [bruhat_u(A, b) for b in _symmetric_list(A)]
    gens.append(bruhat_w(A))
    # dedupe while keeping order
    return list(dict.fromkeys(gens))


def closure_bfs(A, cap=DEFAULT_CAP) -> ClosureResult:
    """Breadth-first closure of {h_a, u_b, w} under right multiplication."""
    A = as_ring(A)
    M = m2(A)
    gens = bruhat_generators(A)
    start = M.one
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for x in gens:
            h = M.mul(g, x)
            if h not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"closure exceeds {cap} elements")
                seen.add(h)
                queue.append(h)
    return ClosureResult(frozenset(seen), len(seen), True, len(gens))


def enumerate_sl_star(A, cap=DEFAULT_CAP) -> list:
    """All of SL_*(2, A) for a finite A, in sorted order.

    Columns (a, c) are filtered by a*c = c*a and coprimality; for each d the
    relation a*d - c*b = 1 pins c*b, and b is looked up by that product.
    """
    A = as_ring(A)
    elems = A._element_list()
    inv, mul = A.involute, A.mul
    one = A.one
    by_c: dict = {}
    out = []
    for a in elems:
        ast = inv(a)
        ad = {d: A.sub(mul(ast, d), one) for d in elems}
        for c in elems:
            cst = inv(c)
            if mul(ast, c) != mul(cst, a):
                continue
            if not _coprime(A, a, c):
                continue
            table = by_c.get(c)
            if table is None:
                table = {}
                for b in elems:
                    table.setdefault(mul(cst, b), []).append(b)
                by_c[c] = table
            for d in elems:
                for b in table.get(ad[d], ()):
                    g = ((a, b), (c, d))
                    if is_sl_star(A, g):
                        out.append(g)
                        if len(out) > cap:
                            raise CapExceeded(f"group exceeds {cap} elements")
    out.sort()
    return out


def _coprime(A: Ring, a, c) -> bool:
    if isinstance(A, MatrixRing):
        return euclid.is_coprime(A, a, c)
    # scalar rings: x a + y c = 1 for some x, y
    if A.is_unit(a) or A.is_unit(c):
        return True
    return any(A.add(A.mul(x, a), A.mul(y, c)) == A.one for x in A._element_list() for y in A._element_list())


# ---------------------------------------------------------------------------
# GL over a two-local base

def gl2loc_iso(A: MatrixRing, g1):
    """(g1, J (phi(g1)^-1)^t J^-1) as an SL_* element over M(n, R x R).

    ``g1`` is a 2 x 2 matrix of n x n matrices over the first component.
    """
    B = A.base
    if not isinstance(B, ProductRing):
        raise Unsupported(f"{A} is not a matrix ring over a product")
    n = A.n
    R = B.left
    big = MatrixRing(R, 2 * n)
    G1 = _flatten_blocks(g1, n)
    if not big.is_unit(G1):
        raise NotUnit("g1 is not invertible")
    phi = B.phi
    phiG = tuple(tuple(phi(x) for x in row) for row in G1)
    inv_t = tuple(zip(*big.inverse(phiG)))
    z, o = R.zero, R.one
    Jb = tuple(
        tuple(
            o if (j == i + n) else (R.neg(o) if i == j + n else z)
            for j in range(2 * n)
        )
        for i in range(2 * n)
    )
    Jb_inv = big.neg(Jb)
    G2 = big.mul(big.mul(Jb, inv_t), Jb_inv)
    blocks1 = _split_blocks(G1, n)
    blocks2 = _split_blocks(G2, n)
    return tuple(
        tuple(
            tuple(tuple((x, y) for x, y in zip(r1, r2)) for r1, r2 in zip(blocks1[i][j], blocks2[i][j]))
            for j in range(2)
        )
        for i in range(2)
    )


def _flatten_blocks(g, n):
    return tuple(
        tuple(g[I // n][J // n][I % n][J % n] for J in range(2 * n)) for I in range(2 * n)
    )


def _split_blocks(G, n):
    return tuple(
        tuple(tuple(tuple(G[i * n + p][j * n + q] for q in range(n)) for p in range(n)) for j in range(2))
        for i in range(2)
    )


def first_component(A: MatrixRing, g):
    """Project an SL_* element over M(n, R x R) to its first component."""
    return tuple(tuple(tuple(tuple(x[0] for x in row) for row in blk) for blk in grow) for grow in g)


# ---------------------------------------------------------------------------
# hermitian form

def hermitian(A: Ring, x, y):
    """h(x, y) = x* J y = x1* y2 - x2* y1 for column pairs x, y."""
    return A.sub(A.mul(A.involute(x[0]), y[1]), A.mul(A.involute(x[1]), y[0]))


def apply(A: Ring, g, x):
    (a, b), (c, d) = g
    return (A.add(A.mul(a, x[0]), A.mul(b, x[1])), A.add(A.mul(c, x[0]), A.mul(d, x[1])))


def hermitian_check(A: Ring, g, x, y) -> bool:
    return hermitian(A, apply(A, g, x), apply(A, g, y)) == hermitian(A, x, y)


def find_isometry_violation(A: Ring, g, rng, samples=1000):
    """A pair (x, y) with h(gx, gy) != h(x, y), or None."""
    for _ in range(samples):
        x = (A.random(rng), A.random(rng))
        y = (A.random(rng), A.random(rng))
        if not hermitian_check(A, g, x, y):
            return x, y
    return None


__all__ = [
    "RELATIONS", "BruhatWord", "ClosureResult", "det_star", "sl_star_violation", "is_sl_star",
    "multiplier", "group_mul", "group_inv", "identity", "bruhat_h", "bruhat_u", "bruhat_w",
    "bruhat_w_inv", "factor_unit_corner", "factor", "factor_path", "make_nonunit_example",
    "closure_bfs", "enumerate_sl_star", "gl2loc_iso", "first_component", "hermitian",
    "hermitian_check", "find_isometry_violation", "m2", "J", "J_inv", "bruhat_generators",
]
