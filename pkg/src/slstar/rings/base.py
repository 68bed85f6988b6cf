"""Abstract involutive ring and the value wrapper used by the public API.

Rings operate on plain hashable Python values (ints, tuples, Fractions) so
that the inner loops of the enumeration oracles stay cheap.  ``Element``
pairs a value with its ring for interactive use and operator overloading.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from ..errors import DescriptorMismatch, InfiniteRing, NotUnit


class Ring:
    """A ring with involution ``x -> x*``.

    Subclasses implement the arithmetic on canonical values.  Equality and
    hashing go through the textual descriptor, so two independently built
    instances of ``Mat(2,GF(3))`` compare equal.
    """

    finite = False
    commutative = True
    is_division_ring = False
    involution_tag = "trivial"
    characteristic = 0

    # -- identity -----------------------------------------------------
    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.descriptor()

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    @property
    def is_field(self) -> bool:
        return self.is_division_ring and self.commutative

    # -- arithmetic ---------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        raise NotImplementedError

    def involute(self, x):
        return x

    def from_int(self, k: int):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_unit(self, x) -> bool:
        try:
            self.inverse(x)
        except NotUnit:
            return False
        return True

    def inverse(self, x):
        raise NotImplementedError

    def power(self, x, k: int):
        result = self.one
        base = x
        if k < 0:
            base = self.inverse(x)
            k = -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_symmetric(self, x) -> bool:
        return self.involute(x) == x

    def contains(self, x) -> bool:
        """Canonical-form predicate."""
        raise NotImplementedError

    # -- finite rings -------------------------------------------------
    def elements(self) -> Iterator[Any]:
        raise InfiniteRing(f"{self} is infinite")

    def size(self) -> int:
        raise InfiniteRing(f"{self} is infinite")

    def units(self) -> list:
        return [x for x in self.elements() if self.is_unit(x)]

    def fixed_elements(self, sign: int = 1) -> list:
        """Elements with ``sign * x* == x``; only for finite rings."""
        if sign == 1:
            return [x for x in self.elements() if self.involute(x) == x]
        return [x for x in self.elements() if self.neg(self.involute(x)) == x]

    def symmetric_elements(self) -> list:
        return self.fixed_elements(1)

    # -- sampling -----------------------------------------------------
    def random(self, rng, bound: int = 3):
        if self.finite:
            elems = self._element_list()
            return elems[rng.randrange(len(elems))]
        raise NotImplementedError

    def random_fixed(self, rng, sign: int = 1, bound: int = 3):
        """Random element with ``sign * x* == x``."""
        x = self.random(rng, bound)
        if self.involution_tag == "trivial":
            if sign == 1:
                return x
            return x if self.characteristic == 2 else self.zero
        y = self.involute(x)
        return self.add(x, y) if sign == 1 else self.sub(x, y)

    def _element_list(self):
        cached = getattr(self, "_elements_cache", None)
        if cached is None:
            cached = list(self.elements())
            self._elements_cache = cached
        return cached

    def generators(self) -> list:
        """A generating set as a ring, used for centrality tests."""
        return [self.one]

    def is_central(self, x) -> bool:
        if self.commutative:
            return True
        return all(self.mul(x, g) == self.mul(g, x) for g in self.generators())

    # -- text ---------------------------------------------------------
    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def element(self, value) -> "Element":
        return Element(self, value)

    def __call__(self, value) -> "Element":
        if isinstance(value, str):
            return Element(self, self.parse(value))
        if isinstance(value, int) and not isinstance(value, bool):
            return Element(self, self.from_int(value))
        return Element(self, value)


def product_elements(ring: Ring, count: int) -> Iterator[tuple]:
    return itertools.product(ring._element_list(), repeat=count)


@dataclass(frozen=True)
class Element:
    """A value tagged with the ring it lives in."""

    ring: Ring
    value: Any

    def _check(self, other) -> Any:
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._check(other)
        return Element(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        return Element(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, other):
        v = self._check(other)
        return Element(self.ring, self.ring.sub(v, self.value))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        v = self._check(other)
        return Element(self.ring, self.ring.mul(self.value, v))

    def __rmul__(self, other):
        v = self._check(other)
        return Element(self.ring, self.ring.mul(v, self.value))

    def star(self) -> "Element":
        return Element(self.ring, self.ring.involute(self.value))

    def inverse(self) -> "Element":
        return Element(self.ring, self.ring.inverse(self.value))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def is_symmetric(self) -> bool:
        return self.ring.is_symmetric(self.value)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor(), self.value))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Element({self.ring}, {self.ring.format(self.value)})"
