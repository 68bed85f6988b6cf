"""Jacobson-radical data for *-local rings: classification, projection, section.

Every built-in local kind gets a ``LocalData`` record whose value-level maps
are used by the lifting division routines.  A brute-force radical test backs
the structural rules up on small finite rings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .errors import Unsupported
from .rings import Element, MatrixRing, ring as as_ring
from .rings.base import Ring
from .rings.scalar import (
    GaloisField,
    Integers,
    PolyRing,
    PrimeField,
    ProductRing,
    ResidueRing,
    TruncatedPoly,
)

ONE_LOCAL = "one-local"
TWO_LOCAL = "two-local"
NOT_LOCAL = "not-star-local"

BRUTE_FORCE_CAP = 256


@dataclass(frozen=True)
class LocalData:
    """Value-level maps for a *-local ring A with radical J.

    ``residue`` is A/J; ``project`` and ``section`` are pi and sigma.
    """

    ring: Ring
    kind: str
    residue: Ring
    project: Callable
    section: Callable
    in_p: Callable
    in_pstar: Callable
    ideal_p: str
    ideal_pstar: str

    def in_radical(self, x) -> bool:
        return self.in_p(x) and self.in_pstar(x)

    def decompose(self, x):
        xs = self.section(self.project(x))
        return xs, self.ring.sub(x, xs)

    def is_unit(self, x) -> bool:
        return self.residue.is_unit(self.project(x))


@dataclass(frozen=True)
class StarLocalClassification:
    descriptor: str
    kind: str
    ideal_p: str = ""
    ideal_pstar: str = ""
    residue: str = ""
    method: str = "structural"
    data: LocalData | None = field(default=None, compare=False, repr=False)

    def contains_p(self, x: Element) -> bool:
        return self._need().in_p(x.value)

    def contains_pstar(self, x: Element) -> bool:
        return self._need().in_pstar(x.value)

    def in_radical(self, x: Element) -> bool:
        return self._need().in_radical(x.value)

    def _need(self) -> LocalData:
        if self.data is None:
            raise Unsupported(f"{self.descriptor} has no membership predicates")
        return self.data

    def records(self) -> list[tuple[str, str]]:
        out = [("kind", self.kind), ("method", self.method)]
        if self.kind != NOT_LOCAL:
            out += [("ideal_p", self.ideal_p), ("ideal_pstar", self.ideal_pstar), ("residue", self.residue)]
        return out


# ---------------------------------------------------------------------------
# structural rules

def _identity(x):
    return x


def _field_data(R: Ring) -> LocalData:
    z = R.zero
    return LocalData(R, ONE_LOCAL, R, _identity, _identity,
                     lambda x: x == z, lambda x: x == z, "0", "0")


@lru_cache(maxsize=None)
def _local_data_cached(descriptor: str, R: Ring) -> LocalData:
    return _build(R)


def local_data(R: Ring) -> LocalData:
    return _local_data_cached(R.descriptor(), R)


def _build(R: Ring) -> LocalData:
    if isinstance(R, ResidueRing):
        if R.k == 1:
            return _field_data(R)
        p = R.p
        F = PrimeField(p)
        return LocalData(R, ONE_LOCAL, F, lambda x: x % p, _identity,
                         lambda x: x % p == 0, lambda x: x % p == 0, f"({p})", f"({p})")
    if isinstance(R, TruncatedPoly):
        if R.k == 1:
            return _field_data(R)
        F, k, fz = R.field, R.k, R.field.zero
        pad = (fz,) * (k - 1)
        return LocalData(R, ONE_LOCAL, F, lambda x: x[0], lambda y: (y,) + pad,
                         lambda x: x[0] == fz, lambda x: x[0] == fz, "(t)", "(t)")
    if R.is_division_ring:
        # fields, Quad, Q, F(t) and the rational quaternions
        return _field_data(R)
    if isinstance(R, ProductRing):
        inner = local_data(R.left)
        if inner.kind != ONE_LOCAL:
            raise Unsupported(f"{R}: components are not local")
        kR = inner.residue
        phi = R.phi_kind
        if phi == "frob" and not isinstance(kR, GaloisField):
            raise Unsupported(f"{R}: twist does not descend")  # pragma: no cover
        res = R if inner.residue is R.left else ProductRing(kR, kR, phi)
        pl, sl, ml = inner.project, inner.section, inner.in_p
        m = inner.ideal_p
        return LocalData(
            R, TWO_LOCAL, res,
            lambda x: (pl(x[0]), pl(x[1])),
            lambda y: (sl(y[0]), sl(y[1])),
            lambda x: ml(x[0]),
            lambda x: ml(x[1]),
            f"{m} x {R.left}", f"{R.left} x {m}",
        )
    if isinstance(R, MatrixRing):
        inner = local_data(R.base)
        n = R.n
        if inner.residue is R.base:
            res = R
        elif R.form == "block":
            res = MatrixRing(inner.residue, n, "block", R.gperm, R.gsign)
        else:
            res = MatrixRing(inner.residue, n, R.form)
        pj, sc, ip, ips = inner.project, inner.section, inner.in_p, inner.in_pstar
        return LocalData(
            R, inner.kind, res,
            lambda a: tuple(tuple(pj(x) for x in row) for row in a),
            lambda a: tuple(tuple(sc(x) for x in row) for row in a),
            lambda a: all(ip(x) for row in a for x in row),
            lambda a: all(ips(x) for row in a for x in row),
            f"M({n},{inner.ideal_p})", f"M({n},{inner.ideal_pstar})",
        )
    raise Unsupported(f"no local structure for {R}")


def _not_local(R: Ring) -> str | None:
    """Reason string when R is structurally known not to be *-local."""
    if isinstance(R, (Integers, PolyRing)):
        return "infinitely many maximal ideals"
    if isinstance(R, ProductRing):
        try:
            inner = local_data(R.left)
        except Unsupported:
            inner = None
        if inner is None or inner.kind != ONE_LOCAL:
            return "more than two maximal ideals"
    if isinstance(R, MatrixRing):
        return _not_local(R.base)
    return None


def classify_star_local(descriptor) -> StarLocalClassification:
    R = as_ring(descriptor)
    reason = _not_local(R)
    if reason is not None:
        return StarLocalClassification(R.descriptor(), NOT_LOCAL, method=f"structural: {reason}")
    data = local_data(R)
    return StarLocalClassification(R.descriptor(), data.kind, data.ideal_p, data.ideal_pstar,
                                   data.residue.descriptor(), "structural", data)


# ---------------------------------------------------------------------------
# brute force on small finite rings

def _check_small(R: Ring):
    if not R.finite:
        raise Unsupported(f"{R} is infinite and has no structural rule")
    if R.size() > BRUTE_FORCE_CAP:
        raise Unsupported(f"{R} exceeds the brute-force cap of {BRUTE_FORCE_CAP}")


def brute_force_in_radical(R: Ring, x) -> bool:
    """x in J iff 1 - a x is a unit for every a.

    In a finite ring one-sided invertibility is two-sided, so the left
    quasi-regularity test characterises the radical.
    """
    _check_small(R)
    one = R.one
    return all(R.is_unit(R.sub(one, R.mul(a, x))) for a in R._element_list())


def brute_force_radical(R: Ring) -> list:
    _check_small(R)
    return [x for x in R._element_list() if brute_force_in_radical(R, x)]


def brute_force_classify(R: Ring) -> str:
    """Count maximal ideals of a small commutative ring via idempotents.

    A finite commutative ring is a product of m local rings and has exactly
    2^m idempotents; it is *-local iff m = 1, or m = 2 with * swapping the
    two local factors.
    """
    _check_small(R)
    if not R.commutative:
        raise Unsupported("idempotent count only classifies commutative rings")
    idem = [e for e in R._element_list() if R.mul(e, e) == e]
    m = int(math.log2(len(idem)))
    if m == 1:
        return ONE_LOCAL
    if m == 2:
        nontrivial = [e for e in idem if e not in (R.zero, R.one)]
        if all(R.involute(e) != e for e in nontrivial):
            return TWO_LOCAL
    return NOT_LOCAL


# ---------------------------------------------------------------------------
# element API

def _data_for(x: Element) -> LocalData:
    return local_data(x.ring)


def jacobson_membership(x: Element) -> bool:
    R = x.ring
    try:
        data = local_data(R)
    except Unsupported:
        return brute_force_in_radical(R, x.value)
    return data.in_radical(x.value)


def project(x: Element) -> Element:
    data = _data_for(x)
    return Element(data.residue, data.project(x.value))


def section(y: Element, ring) -> Element:
    """Lift a residue element of ``ring``'s residue ring back to ``ring``."""
    data = local_data(as_ring(ring))
    if y.ring != data.residue:
        raise Unsupported(f"{y.ring} is not the residue ring of {data.ring}")
    return Element(data.ring, data.section(y.value))


def decompose(x: Element) -> tuple[Element, Element]:
    data = _data_for(x)
    s, j = data.decompose(x.value)
    return Element(x.ring, s), Element(x.ring, j)


def is_unit_via_reduction(x: Element) -> bool:
    return _data_for(x).is_unit(x.value)


def residue_ring(descriptor) -> Ring:
    return local_data(as_ring(descriptor)).residue


def representatives(descriptor) -> list:
    """The representative set R_sigma as values (finite rings only)."""
    data = local_data(as_ring(descriptor))
    return [data.section(y) for y in data.residue._element_list()]


__all__ = [
    "ONE_LOCAL", "TWO_LOCAL", "NOT_LOCAL", "LocalData", "StarLocalClassification",
    "local_data", "classify_star_local", "jacobson_membership", "project", "section",
    "decompose", "is_unit_via_reduction", "residue_ring", "representatives",
    "brute_force_in_radical", "brute_force_radical", "brute_force_classify",
]
