"""Dieudonne determinants, the GL criterion over *-local rings, and SL_*(2,H) = D_H SL(2,Q)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DecompositionFailed, NotUnit, Unsupported
from .group import bruhat_h, is_sl_star, m2
from .local import local_data
from .rings import MatrixRing
from .rings.base import Ring
from .rings.quat import RationalQuaternions
from .rings.scalar import ProductRing


@dataclass(frozen=True)
class DieudonneClass:
    """Class of a Dieudonne determinant.

    Over a field the representative is the determinant itself; over the
    rational quaternions it is the reduced norm, a nonnegative rational.
    """

    value: object
    zero: bool
    kind: str = "field"


def _class(D: Ring, x) -> DieudonneClass:
    if isinstance(D, RationalQuaternions):
        return DieudonneClass(D.nrd(x), x == D.zero, "nrd")
    if not D.is_field:
        raise Unsupported(f"no Dieudonne class over {D}")
    return DieudonneClass(x, x == D.zero, "field")


def class_mul(D: Ring, x: DieudonneClass, y: DieudonneClass) -> DieudonneClass:
    if x.kind == "nrd":
        return DieudonneClass(x.value * y.value, x.zero or y.zero, "nrd")
    return DieudonneClass(D.mul(x.value, y.value), x.zero or y.zero, "field")


def is_identity_class(D: Ring, cls: DieudonneClass) -> bool:
    if cls.kind == "nrd":
        return cls.value == 1
    return cls.value == D.one


def dieudonne_value_2x2(D: Ring, m):
    """alpha delta if gamma = 0, else gamma alpha gamma^-1 delta - gamma beta.

    This is the pivot product of left row reduction, so it matches
    ``dieudonne_det_n`` exactly and the class is multiplicative.
    """
    (al, be), (ga, de) = m
    if ga == D.zero:
        return D.mul(al, de)
    gi = D.inverse(ga)
    return D.sub(D.mul(D.mul(D.mul(ga, al), gi), de), D.mul(ga, be))


def dieudonne_det_2x2(D: Ring, m) -> DieudonneClass:
    return _class(D, dieudonne_value_2x2(D, m))


def dieudonne_det_n(D: Ring, m) -> DieudonneClass:
    """Class of the pivot product after left row reduction to triangular form."""
    n = len(m)
    rows = [list(r) for r in m]
    z = D.zero
    acc = D.one
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != z), None)
        if piv is None:
            return _class(D, z)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            acc = D.neg(acc)
        p = rows[col][col]
        pinv = D.inverse(p)
        for r in range(col + 1, n):
            if rows[r][col] != z:
                f = D.mul(rows[r][col], pinv)
                rows[r] = [D.sub(x, D.mul(f, y)) for x, y in zip(rows[r], rows[col])]
        acc = D.mul(acc, p)
    return _class(D, acc)


def sl2_membership_dieudonne(D: Ring, m) -> bool:
    """m lies in the kernel of the Dieudonne determinant."""
    return is_identity_class(D, dieudonne_det_n(D, m))


# ---------------------------------------------------------------------------
# GL criterion over *-local rings

@dataclass(frozen=True)
class GLCriterion:
    invertible: bool
    congruence: bool
    residue_dets: bool

    def agree(self) -> bool:
        return self.invertible == self.congruence == self.residue_dets

    def as_tuple(self):
        return self.invertible, self.congruence, self.residue_dets


def _residue_left_inverse(Ab: MatrixRing, x):
    """b with b x = 1 over a residue matrix ring, by row reduction."""
    B = Ab.base
    if B.is_division_ring:
        return linalg.solve_left(B, x)
    if isinstance(B, ProductRing) and B.left.is_division_ring:
        x1, x2 = linalg.split_product(x)
        return linalg.join_product(linalg.solve_left(B.left, x1), linalg.solve_left(B.right, x2))
    raise Unsupported(f"no residue solver over {Ab}")


def _residue_dets(Ab: MatrixRing, x) -> list:
    B = Ab.base
    if isinstance(B, ProductRing):
        x1, x2 = linalg.split_product(x)
        return [(MatrixRing(B.left, Ab.n).det(x1), B.left.zero), (MatrixRing(B.right, Ab.n).det(x2), B.right.zero)]
    return [(Ab.det(x), B.zero)]


def gl_criterion(A: MatrixRing, a) -> GLCriterion:
    """(i) a invertible, (ii) b a in K for some b, (iii) residue determinants nonzero."""
    data = local_data(A)
    Ab = data.residue
    # (i) direct inversion with a two-sided check
    try:
        ai = A.inverse(a)
        inv = A.mul(ai, a) == A.one and A.mul(a, ai) == A.one
    except NotUnit:
        inv = False
    # (ii) solve downstairs by elimination and lift
    abar = data.project(a)
    try:
        bbar = _residue_left_inverse(Ab, abar)
        b = data.section(bbar)
        cong = data.project(A.mul(b, a)) == Ab.one
    except NotUnit:
        cong = False
    # (iii)
    res = all(d != z for d, z in _residue_dets(Ab, abar))
    return GLCriterion(inv, cong, res)


# ---------------------------------------------------------------------------
# SL_*(2, H) = D_H . SL(2, Q)

def decompose_dh_sl2f(Q: RationalQuaternions, g):
    """Write g = h_q m with q a unit quaternion and m in SL(2, Q).

    If c != 0 take q = c^-1, so m_21 = 1; otherwise a is a unit and q = a*,
    so m_11 = 1.
    """
    (a, b), (c, d) = g
    if c != Q.zero:
        q = Q.inverse(c)
    elif a != Q.zero:
        q = Q.involute(a)
    else:
        raise DecompositionFailed("a and c both vanish")
    qs_inv = Q.inverse(Q.involute(q))
    m = (
        (Q.mul(qs_inv, a), Q.mul(qs_inv, b)),
        (Q.mul(q, c), Q.mul(q, d)),
    )
    if not all(Q.is_rational(x) for row in m for x in row):
        raise DecompositionFailed("m has non-rational entries")
    M = m2(Q)
    if M.mul(bruhat_h(Q, q), m) != g:
        raise DecompositionFailed("h_q m != g")
    (m11, m12), (m21, m22) = m
    if m11[0] * m22[0] - m12[0] * m21[0] != 1:
        raise DecompositionFailed("det m != 1")
    return q, rational_matrix(m)


def rational_matrix(m):
    return tuple(tuple(x[0] for x in row) for row in m)


def embed_rational(Q: RationalQuaternions, m):
    return tuple(tuple(Q.from_rational(x) for x in row) for row in m)


def random_sl2_rational(rng, bound=5):
    """Random element of SL(2, Q) as a product of elementary matrices."""
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(rng.randint(1, 4)):
        t = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if rng.random() < 0.5:
            e = ((Fraction(1), t), (Fraction(0), Fraction(1)))
        else:
            e = ((Fraction(1), Fraction(0)), (t, Fraction(1)))
        m = tuple(
            tuple(sum(m[i][k] * e[k][j] for k in range(2)) for j in range(2)) for i in range(2)
        )
    if rng.random() < 0.5:
        u = Fraction(rng.randint(1, bound), rng.randint(1, bound))
        m = ((m[0][0] * u, m[0][1] * u), (m[1][0] / u, m[1][1] / u))
    return m


def random_unit_quaternion(Q: RationalQuaternions, rng, bound=4):
    while True:
        q = Q.random(rng, bound)
        if q != Q.zero:
            return q


def construct_dh(Q: RationalQuaternions, q, m):
    """h_q m with m rational; lands in SL_*(2, H) when det m = 1."""
    g = m2(Q).mul(bruhat_h(Q, q), embed_rational(Q, m))
    if not is_sl_star(Q, g):
        raise DecompositionFailed("constructed element is not in SL_*")  # pragma: no cover
    return g


__all__ = [
    "DieudonneClass", "GLCriterion", "dieudonne_det_2x2", "dieudonne_det_n", "dieudonne_value_2x2",
    "sl2_membership_dieudonne", "gl_criterion", "decompose_dh_sl2f", "random_sl2_rational",
    "random_unit_quaternion", "construct_dh", "class_mul", "is_identity_class", "rational_matrix",
]
