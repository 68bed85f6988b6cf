"""n x n matrix rings with a *-transpose style involution.

The involution is ``a* = G conj(a)^t G^-1`` for a signed permutation matrix
``G``.  ``G = I`` gives the plain *-transpose; ``G = J`` on 2 x 2 matrices
gives the split-quaternion involution ``h* = J h^t J^-1``; block-diagonal
``G`` gives the flattened model of ``Mat(n, SplitQuat(R))``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from ..errors import InvalidParameter, NotUnit, ParseError
from .base import Ring
from .literals import split_top

Matrix = tuple  # tuple of row tuples


class MatrixRing(Ring):
    def __init__(self, base: Ring, n: int, form: str = "transpose", gperm=None, gsign=None):
        if n < 1:
            raise InvalidParameter("matrix size must be >= 1")
        self.base, self.n, self.form = base, n, form
        if form == "transpose":
            gperm, gsign = tuple(range(n)), (1,) * n
        elif form == "J":
            if n != 2:
                raise InvalidParameter("the J-involution needs 2 x 2 matrices")
            # J e0 = -e1, J e1 = e0
            gperm, gsign = (1, 0), (-1, 1)
        elif form == "block":
            if gperm is None or gsign is None:
                raise InvalidParameter("block form needs gperm and gsign")
        else:
            raise InvalidParameter(f"unknown involution form {form!r}")
        self.gperm, self.gsign = tuple(gperm), tuple(gsign)
        # target (P(i), P(j)) <- sign_i sign_j conj(a[j][i])
        src = {}
        for i in range(n):
            for j in range(n):
                src[(self.gperm[i], self.gperm[j])] = (j, i, self.gsign[i] * self.gsign[j])
        self._inv_src = tuple(tuple(src[(r, c)] for c in range(n)) for r in range(n))
        self.finite = base.finite
        self.commutative = n == 1 and base.commutative
        self.characteristic = base.characteristic
        self.is_division_ring = n == 1 and base.is_division_ring
        self.involution_tag = "J-conjugation" if form == "J" else "star-transpose"
        self._name = None

    # -- identity ---------------------------------------------------
    def descriptor(self):
        if self._name:
            return self._name
        if self.form == "J":
            return f"SplitQuat({self.base})"
        if self.form == "transpose":
            return f"Mat({self.n},{self.base})"
        signs = "".join("+" if s > 0 else "-" for s in self.gsign)
        return f"Mat({self.n},{self.base})[{','.join(map(str, self.gperm))};{signs}]"

    def with_name(self, name: str) -> "MatrixRing":
        self._name = name
        return self

    # -- construction -----------------------------------------------
    @property
    def zero(self):
        z = self.base.zero
        return tuple((z,) * self.n for _ in range(self.n))

    @property
    def one(self):
        return self.scalar(self.base.one)

    def scalar(self, x):
        z = self.base.zero
        return tuple(tuple(x if i == j else z for j in range(self.n)) for i in range(self.n))

    def from_int(self, k):
        return self.scalar(self.base.from_int(k))

    def from_rows(self, rows) -> Matrix:
        return tuple(tuple(r) for r in rows)

    def entry_matrix(self, i, j, x):
        z = self.base.zero
        return tuple(
            tuple(x if (r, c) == (i, j) else z for c in range(self.n)) for r in range(self.n)
        )

    # -- arithmetic -------------------------------------------------
    def add(self, a, b):
        add = self.base.add
        return tuple(tuple(add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(tuple(neg(x) for x in r) for r in a)

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(tuple(sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def mul(self, a, b):
        B = self.base
        add, mul, z = B.add, B.mul, B.zero
        n = self.n
        cols = tuple(zip(*b))
        out = []
        for row in a:
            new = []
            for col in cols:
                acc = z
                for x, y in zip(row, col):
                    if x != z and y != z:
                        acc = add(acc, mul(x, y))
                new.append(acc)
            out.append(tuple(new))
        del n
        return tuple(out)

    def scale_left(self, x, a):
        mul = self.base.mul
        return tuple(tuple(mul(x, y) for y in r) for r in a)

    def involute(self, a):
        conj, neg = self.base.involute, self.base.neg
        out = []
        for row in self._inv_src:
            new = []
            for (j, i, s) in row:
                v = conj(a[j][i])
                new.append(v if s > 0 else neg(v))
            out.append(tuple(new))
        return tuple(out)

    def transpose(self, a):
        return tuple(zip(*a))

    # -- determinants and units -------------------------------------
    def det(self, a):
        """Determinant; requires a commutative base."""
        B = self.base
        if not B.commutative:
            raise InvalidParameter("det needs a commutative base")
        if B.is_field:
            return _det_field(B, a)
        return _det_laplace(B, a)

    def is_unit(self, a):
        B = self.base
        if B.commutative:
            return B.is_unit(self.det(a))
        if B.is_division_ring:
            try:
                _gauss_jordan_inverse(B, a)
            except NotUnit:
                return False
            return True
        if isinstance(B, MatrixRing):
            flat = self.flat_model()
            return flat.ring.is_unit(flat.to_flat(a))
        return super().is_unit(a)

    def inverse(self, a):
        B = self.base
        if B.is_division_ring:
            return _gauss_jordan_inverse(B, a)
        if B.commutative:
            d = self.det(a)
            dinv = B.inverse(d)
            adj = _adjugate(B, a)
            return tuple(tuple(B.mul(dinv, x) for x in r) for r in adj)
        if isinstance(B, MatrixRing):
            flat = self.flat_model()
            return flat.from_flat(flat.ring.inverse(flat.to_flat(a)))
        raise NotUnit(f"no inversion routine for {self}")  # pragma: no cover

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.n
            and all(isinstance(r, tuple) and len(r) == self.n and all(self.base.contains(x) for x in r) for r in a)
        )

    # -- finite structure ---------------------------------------------
    def elements(self):
        if not self.finite:
            return super().elements()
        n = self.n
        base = self.base._element_list()
        return (
            tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
            for flat in itertools.product(base, repeat=n * n)
        )

    def size(self):
        if not self.finite:
            return super().size()
        return self.base.size() ** (self.n * self.n)

    def _orbits(self):
        """Positions grouped under the involution's index map."""
        seen, fixed, pairs = set(), [], []
        for r in range(self.n):
            for c in range(self.n):
                if (r, c) in seen:
                    continue
                j, i, s = self._inv_src[r][c]
                seen.add((r, c))
                if (j, i) == (r, c):
                    fixed.append(((r, c), s))
                else:
                    seen.add((j, i))
                    pairs.append(((r, c), (j, i), s))
        return fixed, pairs

    def symmetric_elements(self):
        """All x with x* = x, built position by position (finite base)."""
        B = self.base
        fixed, pairs = self._orbits()
        choices = []
        for _pos, s in fixed:
            choices.append(B.fixed_elements(s))
        for _ in pairs:
            choices.append(B._element_list())
        out = []
        z = B.zero
        for combo in itertools.product(*choices):
            m = [[z] * self.n for _ in range(self.n)]
            for (pos, _s), v in zip(fixed, combo):
                m[pos[0]][pos[1]] = v
            for (pos, other, s), v in zip(pairs, combo[len(fixed):]):
                m[pos[0]][pos[1]] = v
                # other = src of pos: a*[pos] = s conj(a[other]) must equal a[pos]
                # so a[other] = s conj(v) (the sign and conj are involutive)
                w = B.involute(v)
                m[other[0]][other[1]] = w if s > 0 else B.neg(w)
            out.append(tuple(tuple(r) for r in m))
        return out

    def random(self, rng, bound=3):
        return tuple(tuple(self.base.random(rng, bound) for _ in range(self.n)) for _ in range(self.n))

    def random_symmetric(self, rng, bound=3):
        B = self.base
        fixed, pairs = self._orbits()
        m = [[B.zero] * self.n for _ in range(self.n)]
        for pos, s in fixed:
            m[pos[0]][pos[1]] = B.random_fixed(rng, s, bound)
        for pos, other, s in pairs:
            v = B.random(rng, bound)
            m[pos[0]][pos[1]] = v
            w = B.involute(v)
            m[other[0]][other[1]] = w if s > 0 else B.neg(w)
        return tuple(tuple(r) for r in m)

    def random_fixed(self, rng, sign=1, bound=3):
        if sign == 1:
            return self.random_symmetric(rng, bound)
        return super().random_fixed(rng, sign, bound)

    def generators(self):
        gens = []
        for i in range(self.n):
            for j in range(self.n):
                gens.append(self.entry_matrix(i, j, self.base.one))
        for g in self.base.generators():
            gens.append(self.scalar(g))
        return gens

    # -- nested matrix rings ------------------------------------------
    def flat_model(self) -> "FlatModel":
        return _flat_model(self)

    # -- text -----------------------------------------------------------
    def parse(self, text):
        text = text.strip().replace(" ", "")
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError("matrix literal must start with [", text, 0)
        rows = split_top(text[1:-1], ",")
        if len(rows) != self.n:
            raise ParseError(f"expected {self.n} rows", text, 0)
        out = []
        for r in rows:
            if not (r.startswith("[") and r.endswith("]")):
                raise ParseError("row literal must be bracketed", r, 0)
            entries = split_top(r[1:-1], ",")
            if len(entries) != self.n:
                raise ParseError(f"expected {self.n} entries", r, 0)
            out.append(tuple(self.base.parse(e) for e in entries))
        return tuple(out)

    def format(self, a):
        return "[" + ",".join("[" + ",".join(self.base.format(x) for x in r) + "]" for r in a) + "]"


def SplitQuat(base: Ring) -> MatrixRing:
    return MatrixRing(base, 2, "J")


class FlatModel:
    """Identification of Mat(n, Mat(m, R)) with Mat(nm, R)."""

    def __init__(self, outer: MatrixRing):
        inner = outer.base
        n, m = outer.n, inner.n
        gperm, gsign = [], []
        for i in range(n):
            for p in range(m):
                gperm.append(outer.gperm[i] * m + inner.gperm[p])
                gsign.append(outer.gsign[i] * inner.gsign[p])
        self.outer, self.inner, self.n, self.m = outer, inner, n, m
        self.ring = MatrixRing(inner.base, n * m, "block", gperm, gsign).with_name(f"Flat({outer})")

    def to_flat(self, a):
        n, m = self.n, self.m
        return tuple(
            tuple(a[I // m][J // m][I % m][J % m] for J in range(n * m)) for I in range(n * m)
        )

    def from_flat(self, f):
        n, m = self.n, self.m
        return tuple(
            tuple(
                tuple(tuple(f[i * m + p][j * m + q] for q in range(m)) for p in range(m))
                for j in range(n)
            )
            for i in range(n)
        )


_flat_cache: dict = {}


def _flat_model(ring: MatrixRing) -> FlatModel:
    key = ring.descriptor()
    fm = _flat_cache.get(key)
    if fm is None:
        if not isinstance(ring.base, MatrixRing):
            raise InvalidParameter(f"{ring} is not a nested matrix ring")
        fm = FlatModel(ring)
        _flat_cache[key] = fm
    return fm


# ---------------------------------------------------------------------------
# linear algebra kernels on raw values

def _det_field(F, a):
    n = len(a)
    m = [list(r) for r in a]
    det = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        p = m[col][col]
        det = F.mul(det, p)
        pinv = F.inverse(p)
        for r in range(col + 1, n):
            if m[r][col] != F.zero:
                f = F.mul(m[r][col], pinv)
                m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[col])]
    return det


def _det_laplace(R, a):
    n = len(a)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return R.one
        acc = R.zero
        sign = 1
        for idx, c in enumerate(cols):
            x = a[row][c]
            if x != R.zero:
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                term = R.mul(x, sub)
                acc = R.add(acc, term) if sign > 0 else R.sub(acc, term)
            sign = -sign
        return acc

    return minor(0, tuple(range(n)))


def _adjugate(R, a):
    n = len(a)
    if n == 1:
        return ((R.one,),)
    out = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = tuple(tuple(a[r][c] for c in range(n) if c != j) for r in range(n) if r != i)
            d = _det_field(R, sub) if R.is_field else _det_laplace(R, sub)
            out[j][i] = d if (i + j) % 2 == 0 else R.neg(d)
    return tuple(tuple(r) for r in out)


def _gauss_jordan_inverse(D, a):
    """Inverse over a division ring using left row operations only."""
    n = len(a)
    m = [list(r) + [D.one if i == j else D.zero for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != D.zero), None)
        if piv is None:
            raise NotUnit("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        pinv = D.inverse(m[col][col])
        m[col] = [D.mul(pinv, x) for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != D.zero:
                f = m[r][col]
                m[r] = [D.sub(x, D.mul(f, y)) for x, y in zip(m[r], m[col])]
    return tuple(tuple(r[n:]) for r in m)
