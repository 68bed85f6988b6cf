"""numpy implementation of the batch kernels.

All arrays are int32 of shape (N, 4) holding 2x2 matrices of element codes.
"""
from __future__ import annotations

import numpy as np


def _mm(add, mul, X, Y):
    return np.stack([
        add[mul[X[:, 0], Y[:, 0]], mul[X[:, 1], Y[:, 2]]],
        add[mul[X[:, 0], Y[:, 1]], mul[X[:, 1], Y[:, 3]]],
        add[mul[X[:, 2], Y[:, 0]], mul[X[:, 3], Y[:, 2]]],
        add[mul[X[:, 2], Y[:, 1]], mul[X[:, 3], Y[:, 3]]],
    ], axis=1)


def _star(inv, X):
    return np.stack([inv[X[:, 0]], inv[X[:, 2]], inv[X[:, 1]], inv[X[:, 3]]], axis=1)


def symmetric_mask(add, mul, inv, A, C):
    """Mask of pairs with a* c symmetric under the transpose-type involution."""
    P = _mm(add, mul, _star(inv, A), C)
    return (inv[P[:, 0]] == P[:, 0]) & (inv[P[:, 3]] == P[:, 3]) & (inv[P[:, 1]] == P[:, 2])


def is_symmetric_mask(inv, S):
    return (inv[S[:, 0]] == S[:, 0]) & (inv[S[:, 3]] == S[:, 3]) & (inv[S[:, 1]] == S[:, 2])


def remainder_units(add, mul, neg, unit, A, S, C):
    """r = a - s c and the mask of r with unit determinant."""
    SC = _mm(add, mul, S, C)
    R = add[A, neg[SC]]
    det = add[mul[R[:, 0], R[:, 3]], neg[mul[R[:, 1], R[:, 2]]]]
    return R.astype(np.int32), unit[det].astype(bool)


def project(proj, base, X):
    """Residue matrix index sum proj(x_k) base^k, k in row-major order."""
    P = proj[X]
    return ((P[:, 0] * base + P[:, 1]) * base + P[:, 2]) * base + P[:, 3]


def _minors(add, mul, neg, A, C):
    rows = [(A[:, 0], A[:, 1]), (A[:, 2], A[:, 3]), (C[:, 0], C[:, 1]), (C[:, 2], C[:, 3])]
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            (x0, x1), (y0, y1) = rows[i], rows[j]
            out.append(add[mul[x0, y1], neg[mul[x1, y0]]])
    return out


def valid_mask(add, mul, neg, inv, notin, A, C):
    """a* c symmetric and [a; c] unimodular.

    ``notin[i]`` flags elements outside the i-th maximal ideal; over a
    commutative local ring the pair is coprime iff for every maximal ideal
    some maximal minor of the stacked 4x2 matrix avoids it.
    """
    ok = symmetric_mask(add, mul, inv, A, C)
    minors = _minors(add, mul, neg, A, C)
    for row in notin:
        hit = np.zeros(len(A), dtype=bool)
        for m in minors:
            hit |= row[m].astype(bool)
        ok &= hit
    return ok
