"""Row reduction over division rings and helpers for product-ring matrices.

All routines act on raw matrix values (tuples of row tuples) and use left
multiplication only, so they are valid over noncommutative division rings.
"""
from __future__ import annotations

from .errors import NotUnit
from .rings.base import Ring
from .rings.matrix import MatrixRing


def identity(D: Ring, n: int):
    return tuple(tuple(D.one if i == j else D.zero for j in range(n)) for i in range(n))


def row_reduce(D: Ring, rows):
    """Reduced row echelon form by left operations.

    Returns ``(T, E, pivots)`` with ``T * rows = E``, ``T`` invertible and
    ``pivots`` the pivot column of each nonzero row of ``E``.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    E = [list(r) for r in rows]
    T = [list(r) for r in identity(D, m)]
    z = D.zero
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, m) if E[r][col] != z), None)
        if piv is None:
            continue
        E[row], E[piv] = E[piv], E[row]
        T[row], T[piv] = T[piv], T[row]
        inv = D.inverse(E[row][col])
        E[row] = [D.mul(inv, x) for x in E[row]]
        T[row] = [D.mul(inv, x) for x in T[row]]
        for r in range(m):
            if r != row and E[r][col] != z:
                f = E[r][col]
                E[r] = [D.sub(x, D.mul(f, y)) for x, y in zip(E[r], E[row])]
                T[r] = [D.sub(x, D.mul(f, y)) for x, y in zip(T[r], T[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return tuple(map(tuple, T)), tuple(map(tuple, E)), pivots


def rank(D: Ring, rows) -> int:
    return len(row_reduce(D, rows)[2])


def left_generation_certificate(D: Ring, a, c):
    """(x, y) with x a + y c = 1 over M(n, D), or None when Aa + Ac != A."""
    n = len(a)
    stacked = tuple(a) + tuple(c)
    T, E, pivots = row_reduce(D, stacked)
    if len(pivots) < n:
        return None
    # the first n rows of E form the identity
    x = tuple(tuple(T[i][:n]) for i in range(n))
    y = tuple(tuple(T[i][n:]) for i in range(n))
    return x, y


def solve_left(D: Ring, m):
    """Inverse of a square matrix over D, or NotUnit."""
    n = len(m)
    T, E, pivots = row_reduce(D, m)
    if len(pivots) < n:
        raise NotUnit("singular matrix")
    return T


# ---------------------------------------------------------------------------
# matrices over R x R

def split_product(a):
    """Matrix over a product ring -> its two component matrices."""
    left = tuple(tuple(x[0] for x in row) for row in a)
    right = tuple(tuple(x[1] for x in row) for row in a)
    return left, right


def join_product(left, right):
    return tuple(tuple((x, y) for x, y in zip(r1, r2)) for r1, r2 in zip(left, right))


def component_ring(A: MatrixRing) -> MatrixRing:
    """M(n, R) for the component R of a product base."""
    return MatrixRing(A.base.left, A.n)


def transpose(a):
    return tuple(zip(*a))


def map_entries(f, a):
    return tuple(tuple(f(x) for x in row) for row in a)
