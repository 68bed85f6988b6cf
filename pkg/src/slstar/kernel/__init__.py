"""Batch kernels for exhaustive pair verification over Mat(2, R), R finite.

The compiled module is used when it imports; setting SLSTAR_PURE=1 forces
the numpy implementation.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernel

BACKEND = "python"
_impl = _pykernel
if os.environ.get("SLSTAR_PURE", "") != "1":
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernel


def _c(x):
    return np.ascontiguousarray(x, dtype=np.int32)


def symmetric_mask(T, A, C):
    return _impl.symmetric_mask(T.add, T.mul, T.inv, _c(A), _c(C))


def valid_mask(T, notin, A, C):
    return _impl.valid_mask(T.add, T.mul, T.neg, T.inv, np.ascontiguousarray(notin, dtype=np.uint8), _c(A), _c(C))


def is_symmetric_mask(T, S):
    return _impl.is_symmetric_mask(T.inv, _c(S))


def remainder_units(T, A, S, C):
    return _impl.remainder_units(T.add, T.mul, T.neg, T.unit, _c(A), _c(S), _c(C))


def project(proj, base, X):
    return _impl.project(_c(proj), int(base), _c(X))


__all__ = ["BACKEND", "symmetric_mask", "valid_mask", "is_symmetric_mask", "remainder_units", "project"]
