"""Involutive rings: concrete instances, the descriptor grammar and a value API."""
from __future__ import annotations

from ..errors import DescriptorMismatch, NotUnit
from .base import Element, Ring
from .grammar import parse_descriptor
from .matrix import FlatModel, MatrixRing, SplitQuat
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
)


def ring(descriptor) -> Ring:
    """Accept either a Ring or a descriptor string."""
    if isinstance(descriptor, Ring):
        return descriptor
    return parse_descriptor(descriptor)


def _pair(x: Element, y: Element):
    if x.ring != y.ring:
        raise DescriptorMismatch(f"{x.ring} vs {y.ring}")
    return x.ring


def add(x: Element, y: Element) -> Element:
    R = _pair(x, y)
    return Element(R, R.add(x.value, y.value))


def mul(x: Element, y: Element) -> Element:
    R = _pair(x, y)
    return Element(R, R.mul(x.value, y.value))


def involute(x: Element) -> Element:
    return x.star()


def is_symmetric(x: Element) -> bool:
    return x.is_symmetric()


def try_invert(x: Element) -> Element:
    """Two-sided inverse; raises NotUnit."""
    R = x.ring
    if isinstance(R, MatrixRing) and not R.is_unit(x.value):
        raise NotUnit(f"{x} is not invertible")
    return Element(R, R.inverse(x.value))


def enumerate_ring(descriptor) -> list[Element]:
    R = ring(descriptor)
    return [Element(R, v) for v in R.elements()]


def symmetric_elements(descriptor) -> list[Element]:
    R = ring(descriptor)
    if not R.finite:
        R.elements()  # raises InfiniteRing
    return [Element(R, v) for v in R.symmetric_elements()]


def is_central_invertible_symmetric(x: Element) -> bool:
    R = x.ring
    return R.is_symmetric(x.value) and R.is_unit(x.value) and R.is_central(x.value)


__all__ = [
    "Element", "Ring", "MatrixRing", "SplitQuat", "FlatModel", "RationalQuaternions",
    "GaloisField", "Integers", "PolyRing", "PrimeField", "ProductRing", "QuadraticExtension",
    "RationalFunctionField", "Rationals", "ResidueRing", "TruncatedPoly",
    "ring", "parse_descriptor", "add", "mul", "involute", "is_symmetric", "try_invert",
    "enumerate_ring", "symmetric_elements", "is_central_invertible_symmetric",
]
