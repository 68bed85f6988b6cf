"""Recursive-descent parser for ring descriptors.

Accepted forms::

    GF(p)  GF(q)  GF(p^k)  Z/(m)  Z/(p^k)  Z  Q  Quat
    Trunc(GF(q),k)  Quad(GF(q))  Quad(GF(q),2)  Quad(GF(q),k=2)  Quad(Q,d)
    Prod(R,R)  Prod(R,R,frob)  Prod(R,R,star)  Mat(n,R)  SplitQuat(R)
    GF(q)[t]  GF(q)(t)
"""
from __future__ import annotations

from functools import lru_cache

from ..errors import InvalidParameter, ParseError
from .base import Ring
from .matrix import MatrixRing, SplitQuat
from .quat import RationalQuaternions
from .scalar import (
    GaloisField,
    Integers,
    PolyRing,
    PrimeField,
    ProductRing,
    QuadraticExtension,
    RationalFunctionField,
    Rationals,
    ResidueRing,
    TruncatedPoly,
    is_prime,
    prime_power,
)


class _Parser:
    def __init__(self, text: str):
        self.src = text
        self.text = text.replace(" ", "")
        self.pos = 0

    def error(self, msg, pos=None):
        return ParseError(msg, self.text, self.pos if pos is None else pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        start = self.pos
        if self.peek("-"):
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "-"):
            raise self.error("expected an integer", start)
        return int(digits)

    def prime_power_arg(self) -> tuple[int, int, int]:
        start = self.pos
        base = self.integer()
        k = 1
        if self.peek("^"):
            self.pos += 1
            k = self.integer()
        if base < 2 or k < 1:
            raise self.error("expected a prime power", start)
        if k == 1:
            try:
                p, k = prime_power(base)
            except InvalidParameter:
                raise self.error(f"{base} is not a prime power", start) from None
            return p, k, start
        if not is_prime(base):
            raise self.error(f"{base} is not prime", start)
        return base, k, start

    def ring(self) -> Ring:
        start = self.pos
        t = self.text
        if self.peek("GF("):
            self.pos += 3
            p, k, at = self.prime_power_arg()
            self.expect(")")
            field = PrimeField(p) if k == 1 else GaloisField(p, k)
            if self.peek("[t]"):
                self.pos += 3
                return PolyRing(field)
            if self.peek("(t)"):
                self.pos += 3
                return RationalFunctionField(field)
            return field
        if self.peek("Z/("):
            self.pos += 3
            p, k, _ = self.prime_power_arg()
            self.expect(")")
            return ResidueRing(p, k)
        if self.peek("Trunc("):
            self.pos += 6
            inner = self.ring()
            self.expect(",")
            at = self.pos
            k = self.integer()
            self.expect(")")
            return self._build(lambda: TruncatedPoly(inner, k), at)
        if self.peek("Quat"):
            self.pos += 4
            return RationalQuaternions()
        if self.peek("Quad("):
            self.pos += 5
            inner = self.ring()
            at = self.pos
            d = None
            if self.peek(","):
                self.pos += 1
                if self.peek("k="):
                    self.pos += 2
                at = self.pos
                d = self.integer()
            self.expect(")")
            if isinstance(inner, Rationals):
                return self._build(lambda: QuadraticExtension(inner, d), at)
            if d not in (None, 2):
                raise self.error("only quadratic extensions of GF(q) are supported", at)
            return self._build(lambda: QuadraticExtension(inner), at)
        if self.peek("Prod("):
            self.pos += 5
            left = self.ring()
            self.expect(",")
            right = self.ring()
            phi = "id"
            at = self.pos
            if self.peek(","):
                self.pos += 1
                at = self.pos
                for name in ("id", "frob", "star"):
                    if self.peek(name):
                        phi = name
                        self.pos += len(name)
                        break
                else:
                    raise self.error("expected id, frob or star")
            self.expect(")")
            return self._build(lambda: ProductRing(left, right, phi), at)
        if self.peek("Mat("):
            self.pos += 4
            at = self.pos
            n = self.integer()
            self.expect(",")
            inner = self.ring()
            self.expect(")")
            return self._build(lambda: MatrixRing(inner, n), at)
        if self.peek("SplitQuat("):
            self.pos += 10
            at = self.pos
            inner = self.ring()
            self.expect(")")
            return self._build(lambda: SplitQuat(inner), at)
        if self.peek("Q"):
            self.pos += 1
            return Rationals()
        if self.peek("Z"):
            self.pos += 1
            return Integers()
        raise self.error(f"unknown ring constructor at {t[start:start + 10]!r}", start)

    def _build(self, make, at):
        try:
            return make()
        except InvalidParameter as exc:
            raise self.error(str(exc), at) from None

    def parse(self) -> Ring:
        if not self.text:
            raise ParseError("empty descriptor", self.src, 0)
        r = self.ring()
        if self.pos != len(self.text):
            raise self.error("trailing characters")
        return r


@lru_cache(maxsize=256)
def parse_descriptor(text: str) -> Ring:
    """Build the ring named by ``text``; raises ParseError with a position."""
    return _Parser(text).parse()
