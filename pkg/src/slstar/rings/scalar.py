"""Commutative coefficient rings: residue rings, finite fields, truncated
polynomials, Q, Z, F_q[t], F_q(t), quadratic extensions and flip products."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from ..errors import InvalidParameter, NotUnit, ParseError
from .base import Ring
from .literals import format_poly, parse_monomial, parse_rational, split_terms, split_top


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(m: int) -> tuple[int, int]:
    """Return (p, k) with m = p^k, or raise."""
    if m < 2:
        raise InvalidParameter(f"{m} is not a prime power")
    for p in range(2, m + 1):
        if m % p == 0:
            k, r = 0, m
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise InvalidParameter(f"{m} is not a prime power")
            return p, k
    raise InvalidParameter(f"{m} is not a prime power")


# ---------------------------------------------------------------------------
# residue rings Z/p^k and prime fields

class ResidueRing(Ring):
    finite = True

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise InvalidParameter(f"{p} is not prime")
        if k < 1:
            raise InvalidParameter("exponent must be >= 1")
        self.p, self.k = p, k
        self.modulus = p**k
        self.characteristic = self.modulus
        self.is_division_ring = k == 1

    def descriptor(self):
        return f"Z/({self.modulus})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def from_int(self, k):
        return k % self.modulus

    def is_unit(self, x):
        return x % self.p != 0

    def inverse(self, x):
        if x % self.p == 0:
            raise NotUnit(f"{x} is not a unit in {self}")
        return pow(x, -1, self.modulus)

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.modulus

    def elements(self):
        return iter(range(self.modulus))

    def size(self):
        return self.modulus

    def random(self, rng, bound=3):
        return rng.randrange(self.modulus)

    def parse(self, text):
        total = Fraction(0)
        for sign, term in split_terms(text):
            coef, sym, _ = parse_monomial(term, "")
            total += sign * coef
        if total.denominator != 1:
            num = total.numerator % self.modulus
            return self.mul(num, self.inverse(total.denominator % self.modulus))
        return int(total) % self.modulus


class PrimeField(ResidueRing):
    def __init__(self, p: int):
        super().__init__(p, 1)

    def descriptor(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# polynomial helpers over a field given as a Ring

def _trim(F, c):
    c = list(c)
    z = F.zero
    while c and c[-1] == z:
        c.pop()
    return tuple(c)


def p_add(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    return _trim(F, [F.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def p_neg(F, a):
    return tuple(F.neg(x) for x in a)


def p_sub(F, a, b):
    return p_add(F, a, p_neg(F, b))


def p_mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(F, out)


def p_scale(F, c, a):
    return _trim(F, [F.mul(c, x) for x in a])


def p_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = F.inverse(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        coef = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = coef
        for i, y in enumerate(b):
            a[i + shift] = F.sub(a[i + shift], F.mul(coef, y))
        a = list(_trim(F, a))
    return _trim(F, q), _trim(F, a)


def p_monic(F, a):
    if not a:
        return a
    return p_scale(F, F.inverse(a[-1]), a)


def p_gcd(F, a, b):
    while b:
        a, b = b, p_divmod(F, a, b)[1]
    return p_monic(F, a)


def p_is_irreducible(F, f) -> bool:
    """Brute-force irreducibility over a finite field (small degrees)."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    elems = F._element_list()
    for deg in range(1, d // 2 + 1):
        for coeffs in itertools.product(elems, repeat=deg):
            g = tuple(coeffs) + (F.one,)
            if not p_divmod(F, f, g)[1]:
                return False
    return True


# ---------------------------------------------------------------------------
# finite fields GF(p^k), k >= 2

_CONWAY_LIKE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


class GaloisField(Ring):
    """GF(p^k) as F_p[x]/(m(x)) with a fixed irreducible m."""

    finite = True
    is_division_ring = True

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise InvalidParameter(f"{p} is not prime")
        if k < 2:
            raise InvalidParameter("use PrimeField for k = 1")
        self.p, self.k = p, k
        self.q = p**k
        self.characteristic = p
        self.prime = PrimeField(p)
        mod = _CONWAY_LIKE.get((p, k))
        if mod is None:
            mod = self._first_irreducible()
        self.modulus_poly = mod
        self._build_tables()

    def _first_irreducible(self):
        F = self.prime
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            f = tuple(coeffs) + (1,)
            if f[0] != 0 and p_is_irreducible(F, f):
                return f
        raise InvalidParameter("no irreducible polynomial found")

    def _raw_mul(self, a, b):
        p, k, m = self.p, self.k, self.modulus_poly
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * m[i]) % p
        return tuple(prod[:k])

    def _build_tables(self):
        elems = [tuple(reversed(c)) for c in itertools.product(range(self.p), repeat=self.k)]
        elems.sort(key=self._index)
        self._elements_cache = elems
        one = (1,) + (0,) * (self.k - 1)
        for g in elems[1:]:
            exp, x = [], one
            for _ in range(self.q - 1):
                exp.append(x)
                x = self._raw_mul(x, g)
            if len(set(exp)) == self.q - 1:
                self._exp = exp
                self._log = {v: i for i, v in enumerate(exp)}
                self.generator_element = g
                return
        raise InvalidParameter("no primitive element")  # pragma: no cover

    def _index(self, x):
        return sum(c * self.p**i for i, c in enumerate(x))

    def descriptor(self):
        return f"GF({self.q})"

    @property
    def zero(self):
        return (0,) * self.k

    @property
    def one(self):
        return (1,) + (0,) * (self.k - 1)

    @property
    def x(self):
        return (0, 1) + (0,) * (self.k - 2)

    def add(self, a, b):
        p = self.p
        return tuple((u + v) % p for u, v in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-u % p for u in a)

    def sub(self, a, b):
        p = self.p
        return tuple((u - v) % p for u, v in zip(a, b))

    def mul(self, a, b):
        log = self._log
        if a not in log or b not in log:
            return self.zero
        return self._exp[(log[a] + log[b]) % (self.q - 1)]

    def from_int(self, k):
        return (k % self.p,) + (0,) * (self.k - 1)

    def is_unit(self, a):
        return a in self._log

    def inverse(self, a):
        if a not in self._log:
            raise NotUnit("zero is not invertible")
        return self._exp[-self._log[a] % (self.q - 1)]

    def frobenius(self, a):
        if a not in self._log:
            return a
        return self._exp[self._log[a] * self.p % (self.q - 1)]

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.k and all(
            isinstance(c, int) and 0 <= c < self.p for c in a
        )

    def elements(self):
        return iter(self._elements_cache)

    def size(self):
        return self.q

    def generators(self):
        return [self.one, self.x]

    def parse(self, text):
        acc = self.zero
        for sign, term in split_terms(text):
            if term.startswith("(") and term.endswith(")"):
                val = self.parse(term[1:-1])
                acc = self.add(acc, val if sign > 0 else self.neg(val))
                continue
            coef, sym, power = parse_monomial(term, "x")
            c = int(coef * sign) if coef.denominator == 1 else None
            if c is None:
                raise ParseError("non-integral coefficient", text, 0)
            mono = self.power(self.x, power) if sym else self.one
            acc = self.add(acc, self.mul(self.from_int(c), mono))
        return acc

    def format(self, a):
        return format_poly(a, "x")


# ---------------------------------------------------------------------------
# truncated polynomials F[t]/(t^k)

class TruncatedPoly(Ring):
    finite = True

    def __init__(self, field: Ring, k: int):
        if k < 1:
            raise InvalidParameter("truncation degree must be >= 1")
        if not (field.is_field and field.finite):
            raise InvalidParameter("Trunc needs a finite field")
        self.field, self.k = field, k
        self.characteristic = field.characteristic
        self.is_division_ring = k == 1

    def descriptor(self):
        return f"Trunc({self.field},{self.k})"

    @property
    def zero(self):
        return (self.field.zero,) * self.k

    @property
    def one(self):
        return (self.field.one,) + (self.field.zero,) * (self.k - 1)

    @property
    def t(self):
        if self.k == 1:
            return self.zero
        return (self.field.zero, self.field.one) + (self.field.zero,) * (self.k - 2)

    def add(self, a, b):
        F = self.field
        return tuple(F.add(u, v) for u, v in zip(a, b))

    def neg(self, a):
        return tuple(self.field.neg(u) for u in a)

    def mul(self, a, b):
        F, k = self.field, self.k
        out = [F.zero] * k
        for i, u in enumerate(a):
            if u == F.zero:
                continue
            for j in range(k - i):
                out[i + j] = F.add(out[i + j], F.mul(u, b[j]))
        return tuple(out)

    def from_int(self, n):
        return (self.field.from_int(n),) + (self.field.zero,) * (self.k - 1)

    def is_unit(self, a):
        return a[0] != self.field.zero

    def inverse(self, a):
        F = self.field
        if a[0] == F.zero:
            raise NotUnit("constant term is zero")
        inv0 = F.inverse(a[0])
        out = [inv0] + [F.zero] * (self.k - 1)
        for n in range(1, self.k):
            acc = F.zero
            for i in range(1, n + 1):
                acc = F.add(acc, F.mul(a[i], out[n - i]))
            out[n] = F.neg(F.mul(inv0, acc))
        return tuple(out)

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.k and all(self.field.contains(u) for u in a)

    def elements(self):
        return (tuple(c) for c in itertools.product(self.field._element_list(), repeat=self.k))

    def size(self):
        return self.field.size() ** self.k

    def generators(self):
        return [self.one, self.t]

    def parse(self, text):
        acc = self.zero
        for sign, term in split_terms(text):
            if term.startswith("(") and term.endswith(")") and "t" not in term:
                val = (self.field.parse(term[1:-1]),) + (self.field.zero,) * (self.k - 1)
            else:
                coef, sym, power = parse_monomial(term, "t")
                if coef.denominator != 1:
                    raise ParseError("non-integral coefficient", text, 0)
                val = self.mul(self.from_int(int(coef)), self.power(self.t, power) if sym else self.one)
            acc = self.add(acc, val if sign > 0 else self.neg(val))
        return acc

    def format(self, a):
        F = self.field
        return format_poly(a, "t", fmt=F.format, is_zero=lambda c: c == F.zero, is_one=lambda c: c == F.one)


# ---------------------------------------------------------------------------
# Q and Z

class Rationals(Ring):
    is_division_ring = True

    def descriptor(self):
        return "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def from_int(self, k):
        return Fraction(k)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotUnit("zero is not invertible")
        return 1 / Fraction(x)

    def contains(self, x):
        return isinstance(x, Fraction)

    def random(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def parse(self, text):
        total = Fraction(0)
        for sign, term in split_terms(text):
            coef, _, _ = parse_monomial(term, "")
            total += sign * coef
        return total

    def format(self, x):
        return str(x)


class Integers(Ring):
    """Z; used as the integral tail ring of rational adeles."""

    def descriptor(self):
        return "Z"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def from_int(self, k):
        return k

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x not in (1, -1):
            raise NotUnit(f"{x} is not a unit in Z")
        return x

    def contains(self, x):
        return isinstance(x, int)

    def random(self, rng, bound=3):
        return rng.randint(-bound, bound)

    def parse(self, text):
        v = Rationals().parse(text)
        if v.denominator != 1:
            raise ParseError("not an integer", text, 0)
        return int(v)


# ---------------------------------------------------------------------------
# F_q[t] and F_q(t)

class PolyRing(Ring):
    """F_q[t]; values are trimmed low-to-high coefficient tuples."""

    def __init__(self, field: Ring):
        if not (field.is_field and field.finite):
            raise InvalidParameter("F_q[t] needs a finite field")
        self.field = field
        self.characteristic = field.characteristic

    def descriptor(self):
        return f"{self.field}[t]"

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return (self.field.one,)

    @property
    def t(self):
        return (self.field.zero, self.field.one)

    def add(self, a, b):
        return p_add(self.field, a, b)

    def neg(self, a):
        return p_neg(self.field, a)

    def mul(self, a, b):
        return p_mul(self.field, a, b)

    def from_int(self, k):
        return _trim(self.field, (self.field.from_int(k),))

    def is_unit(self, a):
        return len(a) == 1

    def inverse(self, a):
        if len(a) != 1:
            raise NotUnit("only nonzero constants are units in F_q[t]")
        return (self.field.inverse(a[0]),)

    def contains(self, a):
        return isinstance(a, tuple) and (not a or a[-1] != self.field.zero)

    def degree(self, a):
        return len(a) - 1

    def divmod(self, a, b):
        return p_divmod(self.field, a, b)

    def random(self, rng, bound=2):
        F = self.field
        return _trim(F, [F.random(rng) for _ in range(rng.randint(0, bound) + 1)])

    def parse(self, text):
        acc = self.zero
        for sign, term in split_terms(text):
            if term.startswith("(") and term.endswith(")") and "t" not in term:
                val = _trim(self.field, (self.field.parse(term[1:-1]),))
            else:
                coef, sym, power = parse_monomial(term, "t")
                if coef.denominator != 1:
                    raise ParseError("non-integral coefficient", text, 0)
                val = self.mul(self.from_int(int(coef)), self.power(self.t, power) if sym else self.one)
            acc = self.add(acc, val if sign > 0 else self.neg(val))
        return acc

    def format(self, a):
        F = self.field
        return format_poly(a, "t", fmt=F.format, is_zero=lambda c: c == F.zero, is_one=lambda c: c == F.one)

    def monic_irreducibles(self, max_degree: int):
        """Monic irreducible polynomials of degree <= max_degree, by degree."""
        F = self.field
        out = []
        for d in range(1, max_degree + 1):
            for coeffs in itertools.product(F._element_list(), repeat=d):
                f = tuple(coeffs) + (F.one,)
                if p_is_irreducible(F, f):
                    out.append(f)
        return out


class RationalFunctionField(Ring):
    """F_q(t); values (num, den) with gcd 1 and den monic."""

    is_division_ring = True

    def __init__(self, field: Ring):
        self.poly = PolyRing(field)
        self.field = field
        self.characteristic = field.characteristic

    def descriptor(self):
        return f"{self.field}(t)"

    def _make(self, num, den):
        F = self.field
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), (F.one,))
        g = p_gcd(F, num, den)
        num = p_divmod(F, num, g)[0]
        den = p_divmod(F, den, g)[0]
        lead = F.inverse(den[-1])
        return p_scale(F, lead, num), p_scale(F, lead, den)

    def from_poly(self, a):
        return self._make(a, self.poly.one)

    @property
    def zero(self):
        return ((), (self.field.one,))

    @property
    def one(self):
        return ((self.field.one,), (self.field.one,))

    @property
    def t(self):
        return self.from_poly(self.poly.t)

    def add(self, x, y):
        F = self.field
        return self._make(p_add(F, p_mul(F, x[0], y[1]), p_mul(F, y[0], x[1])), p_mul(F, x[1], y[1]))

    def neg(self, x):
        return (p_neg(self.field, x[0]), x[1])

    def mul(self, x, y):
        F = self.field
        return self._make(p_mul(F, x[0], y[0]), p_mul(F, x[1], y[1]))

    def from_int(self, k):
        return self.from_poly(self.poly.from_int(k))

    def is_unit(self, x):
        return bool(x[0])

    def inverse(self, x):
        if not x[0]:
            raise NotUnit("zero is not invertible")
        return self._make(x[1], x[0])

    def contains(self, x):
        F = self.field
        num, den = x
        return bool(den) and den[-1] == F.one and p_gcd(F, num, den) == (F.one,) if num else den == (F.one,)

    def is_integral(self, x) -> bool:
        return len(x[1]) == 1

    def random(self, rng, bound=2):
        num = self.poly.random(rng, bound)
        den = ()
        while not den:
            den = self.poly.random(rng, 1)
        return self._make(num, den)

    def parse(self, text):
        parts = split_top(text.replace(" ", ""), "/")
        if len(parts) == 1:
            return self.from_poly(self.poly.parse(_strip_parens(parts[0])))
        if len(parts) == 2:
            num = self.poly.parse(_strip_parens(parts[0]))
            den = self.poly.parse(_strip_parens(parts[1]))
            return self._make(num, den)
        raise ParseError("bad rational function", text, 0)

    def format(self, x):
        num = self.poly.format(x[0])
        if x[1] == (self.field.one,):
            return num
        return f"({num})/({self.poly.format(x[1])})"


def _strip_parens(s: str) -> str:
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


# ---------------------------------------------------------------------------
# quadratic extensions with Galois involution

class QuadraticExtension(Ring):
    """base[s]/(s^2 - alpha*s - beta) with the nontrivial Galois involution.

    Over GF(q) this is GF(q^2) with Frobenius; over Q it is Q(sqrt d).
    """

    is_division_ring = True
    involution_tag = "galois"

    def __init__(self, base: Ring, d: int | None = None):
        self.base = base
        self.characteristic = base.characteristic
        if isinstance(base, Rationals):
            if d is None or d in (0, 1) or not _squarefree(d):
                raise InvalidParameter("Quad(Q,d) needs a square-free d != 0, 1")
            self.d = d
            self.alpha, self.beta = base.zero, base.from_int(d)
        else:
            if not (base.is_field and base.finite):
                raise InvalidParameter("Quad needs GF(q) or Q")
            self.d = None
            self.alpha, self.beta = self._pick_min_poly()
        self.finite = base.finite

    def _pick_min_poly(self):
        F = self.base
        elems = F._element_list()
        alphas = [F.zero] if F.characteristic != 2 else [F.one]
        for alpha in alphas:
            for beta in elems:
                # s^2 - alpha s - beta has no root
                if all(F.sub(F.sub(F.mul(r, r), F.mul(alpha, r)), beta) != F.zero for r in elems):
                    return alpha, beta
        raise InvalidParameter("no irreducible quadratic")  # pragma: no cover

    def descriptor(self):
        if self.d is not None:
            return f"Quad(Q,{self.d})"
        return f"Quad({self.base})"

    @property
    def zero(self):
        return (self.base.zero, self.base.zero)

    @property
    def one(self):
        return (self.base.one, self.base.zero)

    @property
    def s(self):
        return (self.base.zero, self.base.one)

    def add(self, x, y):
        B = self.base
        return (B.add(x[0], y[0]), B.add(x[1], y[1]))

    def neg(self, x):
        B = self.base
        return (B.neg(x[0]), B.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        a, b = x
        c, d = y
        bd = B.mul(b, d)
        return (
            B.add(B.mul(a, c), B.mul(bd, self.beta)),
            B.add(B.add(B.mul(a, d), B.mul(b, c)), B.mul(bd, self.alpha)),
        )

    def involute(self, x):
        B = self.base
        a, b = x
        return (B.add(a, B.mul(b, self.alpha)), B.neg(b))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero)

    def norm(self, x):
        n = self.mul(x, self.involute(x))
        return n[0]

    def is_unit(self, x):
        return x != self.zero

    def inverse(self, x):
        if x == self.zero:
            raise NotUnit("zero is not invertible")
        n_inv = self.base.inverse(self.norm(x))
        c = self.involute(x)
        return (self.base.mul(c[0], n_inv), self.base.mul(c[1], n_inv))

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == 2 and all(self.base.contains(u) for u in x)

    def elements(self):
        if not self.finite:
            return super().elements()
        return ((a, b) for b in self.base._element_list() for a in self.base._element_list())

    def size(self):
        if not self.finite:
            return super().size()
        return self.base.size() ** 2

    def generators(self):
        return [self.one, self.s]

    def random(self, rng, bound=3):
        if self.finite:
            return super().random(rng, bound)
        return (self.base.random(rng, bound), self.base.random(rng, bound))

    def parse(self, text):
        B = self.base
        acc = self.zero
        for sign, term in split_terms(text):
            if term == "s" or term.endswith("*s"):
                coef_txt = term[:-2] if term.endswith("*s") else "1"
                val = (B.zero, B.parse(_strip_parens(coef_txt)))
            else:
                val = (B.parse(_strip_parens(term)), B.zero)
            acc = self.add(acc, val if sign > 0 else self.neg(val))
        return acc

    def format(self, x):
        B = self.base
        a, b = B.format(x[0]), B.format(x[1])
        if x[1] == B.zero:
            return a
        bs = "s" if x[1] == B.one else (f"({b})*s" if any(c in b[1:] for c in "+-") else f"{b}*s")
        if x[0] == B.zero:
            return bs
        return f"{a}+{bs}" if not bs.startswith("-") else f"{a}{bs}"


def _squarefree(d: int) -> bool:
    n = abs(d)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# R x R with the (phi-)flip involution

class ProductRing(Ring):
    """R x R with involution (x|y)* = (phi^-1(y) | phi(x)).

    ``phi`` is ``"id"`` (plain flip), ``"frob"`` (Frobenius of a finite
    field) or ``"star"`` (the component involution, giving the flip* form).
    """

    involution_tag = "flip"

    def __init__(self, left: Ring, right: Ring, phi: str = "id"):
        if left != right:
            raise InvalidParameter("Prod requires two copies of the same ring")
        if phi not in ("id", "frob", "star"):
            raise InvalidParameter(f"unknown twist {phi!r}")
        if phi == "frob" and not isinstance(left, GaloisField):
            raise InvalidParameter("frob twist needs GF(p^k), k >= 2")
        self.left, self.right, self.phi_kind = left, right, phi
        self.finite = left.finite
        self.commutative = left.commutative
        self.characteristic = math.lcm(left.characteristic, right.characteristic)

    def descriptor(self):
        if self.phi_kind == "id":
            return f"Prod({self.left},{self.right})"
        return f"Prod({self.left},{self.right},{self.phi_kind})"

    def phi(self, x):
        if self.phi_kind == "id":
            return x
        if self.phi_kind == "star":
            return self.left.involute(x)
        return self.left.frobenius(x)

    def phi_inv(self, y):
        if self.phi_kind == "id":
            return y
        if self.phi_kind == "star":
            return self.left.involute(y)
        F = self.left
        return F.power(y, F.q // F.p) if y != F.zero else y

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    def add(self, x, y):
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def neg(self, x):
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def sub(self, x, y):
        return (self.left.sub(x[0], y[0]), self.right.sub(x[1], y[1]))

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def involute(self, x):
        return (self.phi_inv(x[1]), self.phi(x[0]))

    def from_int(self, k):
        return (self.left.from_int(k), self.right.from_int(k))

    def is_unit(self, x):
        return self.left.is_unit(x[0]) and self.right.is_unit(x[1])

    def inverse(self, x):
        return (self.left.inverse(x[0]), self.right.inverse(x[1]))

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == 2 and self.left.contains(x[0]) and self.right.contains(x[1])

    def elements(self):
        return ((a, b) for a in self.left._element_list() for b in self.right._element_list())

    def size(self):
        return self.left.size() * self.right.size()

    def generators(self):
        gens = [(g, self.right.zero) for g in self.left.generators()]
        gens += [(self.left.zero, g) for g in self.right.generators()]
        return gens

    def random(self, rng, bound=3):
        return (self.left.random(rng, bound), self.right.random(rng, bound))

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError("product literal must be (x|y)", text, 0)
        parts = split_top(text[1:-1], "|")
        if len(parts) != 2:
            raise ParseError("product literal must have two components", text, 0)
        return (self.left.parse(parts[0]), self.right.parse(parts[1]))

    def format(self, x):
        return f"({self.left.format(x[0])}|{self.right.format(x[1])})"


__all__ = [
    "ResidueRing",
    "PrimeField",
    "GaloisField",
    "TruncatedPoly",
    "Rationals",
    "Integers",
    "PolyRing",
    "RationalFunctionField",
    "QuadraticExtension",
    "ProductRing",
    "is_prime",
    "prime_power",
    "parse_rational",
]
