"""Hamilton's quaternions (-1,-1) over Q with conjugation."""
from __future__ import annotations

from fractions import Fraction

from ..errors import NotUnit, ParseError
from .base import Ring
from .literals import parse_monomial, split_terms

_BASIS = ("", "i", "j", "k")


class RationalQuaternions(Ring):
    """x + y i + z j + w k with i^2 = j^2 = -1, ij = k = -ji.

    Values are 4-tuples of Fractions; every nonzero value is a unit.
    """

    commutative = False
    is_division_ring = True
    involution_tag = "quaternion-conjugation"

    def descriptor(self):
        return "Quat"

    @property
    def zero(self):
        return (Fraction(0),) * 4

    @property
    def one(self):
        return (Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    @property
    def i(self):
        return (Fraction(0), Fraction(1), Fraction(0), Fraction(0))

    @property
    def j(self):
        return (Fraction(0), Fraction(0), Fraction(1), Fraction(0))

    @property
    def k(self):
        return (Fraction(0), Fraction(0), Fraction(0), Fraction(1))

    def add(self, p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3])

    def neg(self, p):
        return (-p[0], -p[1], -p[2], -p[3])

    def sub(self, p, q):
        return (p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3])

    def mul(self, p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def involute(self, p):
        return (p[0], -p[1], -p[2], -p[3])

    def nrd(self, p) -> Fraction:
        """Reduced norm q q* = x^2 + y^2 + z^2 + w^2."""
        return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]

    def from_int(self, n):
        return (Fraction(n), Fraction(0), Fraction(0), Fraction(0))

    def from_rational(self, r):
        return (Fraction(r), Fraction(0), Fraction(0), Fraction(0))

    def is_rational(self, p) -> bool:
        return p[1] == 0 and p[2] == 0 and p[3] == 0

    def is_unit(self, p):
        return p != self.zero

    def inverse(self, p):
        n = self.nrd(p)
        if n == 0:
            raise NotUnit("zero quaternion is not invertible")
        c = self.involute(p)
        return (c[0] / n, c[1] / n, c[2] / n, c[3] / n)

    def contains(self, p):
        return isinstance(p, tuple) and len(p) == 4 and all(isinstance(c, Fraction) for c in p)

    def generators(self):
        return [self.one, self.i, self.j]

    def random(self, rng, bound=3):
        return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(4))

    def parse(self, text):
        coords = [Fraction(0)] * 4
        for sign, term in split_terms(text):
            coef, sym, power = parse_monomial(term, "ijk")
            if power > 1:
                raise ParseError("powers of i, j, k are not literals", text, 0)
            coords[_BASIS.index(sym or "")] += sign * coef
        return tuple(coords)

    def format(self, p):
        parts = []
        for c, b in zip(p, _BASIS):
            if c == 0:
                continue
            if b == "":
                parts.append(str(c))
            elif c == 1:
                parts.append(b)
            elif c == -1:
                parts.append("-" + b)
            else:
                parts.append(f"{c}*{b}")
        if not parts:
            return "0"
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out
