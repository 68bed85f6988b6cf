"""Integer encodings of small finite rings for the batch kernels.

Elements are coded by their position in ``ring._element_list()``; a 2x2
matrix is a row of four codes in row-major order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..rings.base import Ring


@dataclass(frozen=True)
class RingTables:
    ring: Ring
    elements: tuple
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray     # the involution, not the multiplicative inverse
    unit: np.ndarray    # uint8 mask

    @property
    def size(self) -> int:
        return len(self.elements)

    def code(self, x) -> int:
        return self.index[x]

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}


_CACHE: dict = {}


def ring_tables(R: Ring) -> RingTables:
    key = R.descriptor()
    if key in _CACHE:
        return _CACHE[key]
    if not (R.finite and R.commutative):
        raise ValueError(f"{R} cannot be table-encoded")
    els = tuple(R._element_list())
    idx = {x: i for i, x in enumerate(els)}
    q = len(els)
    add = np.empty((q, q), dtype=np.int32)
    mul = np.empty((q, q), dtype=np.int32)
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            add[i, j] = idx[R.add(x, y)]
            mul[i, j] = idx[R.mul(x, y)]
    neg = np.array([idx[R.neg(x)] for x in els], dtype=np.int32)
    inv = np.array([idx[R.involute(x)] for x in els], dtype=np.int32)
    unit = np.array([1 if R.is_unit(x) else 0 for x in els], dtype=np.uint8)
    out = RingTables(R, els, add, mul, neg, inv, unit)
    _CACHE[key] = out
    return out


def encode_matrices(T: RingTables, mats) -> np.ndarray:
    idx = T.index
    return np.array([[idx[x] for row in m for x in row] for m in mats], dtype=np.int32).reshape(-1, 4)


def decode_matrix(T: RingTables, row) -> tuple:
    e = T.elements
    return ((e[row[0]], e[row[1]]), (e[row[2]], e[row[3]]))


def all_matrices(T: RingTables) -> np.ndarray:
    """Every 2x2 matrix, in the order of MatrixRing(R, 2).elements()."""
    q = T.size
    grid = np.indices((q, q, q, q)).reshape(4, -1).T
    return np.ascontiguousarray(grid, dtype=np.int32)
