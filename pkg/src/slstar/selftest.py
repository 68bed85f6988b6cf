"""Ring invariant suite: axioms, the anti-automorphism law and unit soundness."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import NotUnit
from .rings import ring as as_ring
from .rings.base import Ring

EXHAUSTIVE_BELOW = 81
UNIT_BRUTE_FORCE_CAP = 256


@dataclass
class SelftestResult:
    descriptor: str
    mode: str
    checks: dict = field(default_factory=dict)    # name -> [cases, failures]

    def tally(self, name: str, ok: bool) -> None:
        c = self.checks.setdefault(name, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1

    @property
    def passed(self) -> bool:
        return all(f == 0 for _, f in self.checks.values())

    def records(self) -> list[tuple[str, str]]:
        out = [("mode", self.mode)]
        for name in sorted(self.checks):
            n, f = self.checks[name]
            out.append((f"check[{name}]", f"{n - f}/{n}"))
        return out


def _triples(R: Ring, samples: int, rng):
    if R.finite and R.size() < EXHAUSTIVE_BELOW:
        els = R._element_list()
        return "exhaustive", itertools.product(els, repeat=3)
    return "sampled", ((R.random(rng), R.random(rng), R.random(rng)) for _ in range(samples))


def ring_selftest(descriptor, samples: int = 10_000, seed: int = 0) -> SelftestResult:
    R = as_ring(descriptor)
    rng = random.Random(seed)
    mode, triples = _triples(R, samples, rng)
    res = SelftestResult(R.descriptor(), mode)
    one, zero = R.one, R.zero
    res.tally("involute(1) = 1", R.involute(one) == one)
    for x, y, z in triples:
        xy = R.mul(x, y)
        res.tally("associativity", R.mul(xy, z) == R.mul(x, R.mul(y, z)))
        res.tally("left distributivity", R.mul(x, R.add(y, z)) == R.add(xy, R.mul(x, z)))
        res.tally("right distributivity", R.mul(R.add(x, y), z) == R.add(R.mul(x, z), R.mul(y, z)))
        res.tally("identity", R.mul(one, x) == x == R.mul(x, one) and R.add(x, zero) == x)
        res.tally("additive inverse", R.add(x, R.neg(x)) == zero)
        res.tally("anti-automorphism", R.involute(xy) == R.mul(R.involute(y), R.involute(x)))
        res.tally("additive involution", R.involute(R.add(x, y)) == R.add(R.involute(x), R.involute(y)))
        res.tally("involution squared", R.involute(R.involute(x)) == x)
        res.tally("canonical form", R.contains(xy) and R.contains(R.add(x, y)) and R.contains(R.involute(x)))
        res.tally("unit roundtrip", _unit_roundtrip(R, x))
    if R.finite and R.size() <= UNIT_BRUTE_FORCE_CAP:
        els = R._element_list()
        for x in els:
            brute = any(R.mul(x, y) == one and R.mul(y, x) == one for y in els)
            res.tally("unit soundness", brute == _invertible(R, x))
    return res


def _invertible(R: Ring, x) -> bool:
    try:
        R.inverse(x)
    except NotUnit:
        return False
    return True


def _unit_roundtrip(R: Ring, x) -> bool:
    try:
        y = R.inverse(x)
    except NotUnit:
        return True
    return R.mul(x, y) == R.one and R.mul(y, x) == R.one


__all__ = ["SelftestResult", "ring_selftest"]
