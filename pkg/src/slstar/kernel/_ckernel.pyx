# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; same contracts as the numpy fallback."""
import numpy as np


cdef inline int _mul2(const int[:, ::1] add, const int[:, ::1] mul,
                      int x0, int y0, int x1, int y1) noexcept nogil:
    return add[mul[x0, y0], mul[x1, y1]]


def symmetric_mask(const int[:, ::1] add, const int[:, ::1] mul, const int[::1] inv,
                   const int[:, ::1] A, const int[:, ::1] C):
    cdef Py_ssize_t n = A.shape[0], k
    out = np.empty(n, dtype=np.bool_)
    cdef unsigned char[::1] o = out.view(np.uint8)
    cdef int a0, a1, a2, a3, p0, p1, p2, p3
    with nogil:
        for k in range(n):
            # a* = [[inv a0, inv a2], [inv a1, inv a3]]
            a0 = inv[A[k, 0]]
            a1 = inv[A[k, 2]]
            a2 = inv[A[k, 1]]
            a3 = inv[A[k, 3]]
            p0 = _mul2(add, mul, a0, C[k, 0], a1, C[k, 2])
            p1 = _mul2(add, mul, a0, C[k, 1], a1, C[k, 3])
            p2 = _mul2(add, mul, a2, C[k, 0], a3, C[k, 2])
            p3 = _mul2(add, mul, a2, C[k, 1], a3, C[k, 3])
            o[k] = inv[p0] == p0 and inv[p3] == p3 and inv[p1] == p2
    return out


def is_symmetric_mask(const int[::1] inv, const int[:, ::1] S):
    cdef Py_ssize_t n = S.shape[0], k
    out = np.empty(n, dtype=np.bool_)
    cdef unsigned char[::1] o = out.view(np.uint8)
    with nogil:
        for k in range(n):
            o[k] = inv[S[k, 0]] == S[k, 0] and inv[S[k, 3]] == S[k, 3] and inv[S[k, 1]] == S[k, 2]
    return out


def remainder_units(const int[:, ::1] add, const int[:, ::1] mul, const int[::1] neg,
                    const unsigned char[::1] unit,
                    const int[:, ::1] A, const int[:, ::1] S, const int[:, ::1] C):
    cdef Py_ssize_t n = A.shape[0], k
    R = np.empty((n, 4), dtype=np.int32)
    ok = np.empty(n, dtype=np.bool_)
    cdef int[:, ::1] r = R
    cdef unsigned char[::1] o = ok.view(np.uint8)
    cdef int s0, s1, s2, s3, det
    with nogil:
        for k in range(n):
            s0 = _mul2(add, mul, S[k, 0], C[k, 0], S[k, 1], C[k, 2])
            s1 = _mul2(add, mul, S[k, 0], C[k, 1], S[k, 1], C[k, 3])
            s2 = _mul2(add, mul, S[k, 2], C[k, 0], S[k, 3], C[k, 2])
            s3 = _mul2(add, mul, S[k, 2], C[k, 1], S[k, 3], C[k, 3])
            r[k, 0] = add[A[k, 0], neg[s0]]
            r[k, 1] = add[A[k, 1], neg[s1]]
            r[k, 2] = add[A[k, 2], neg[s2]]
            r[k, 3] = add[A[k, 3], neg[s3]]
            det = add[mul[r[k, 0], r[k, 3]], neg[mul[r[k, 1], r[k, 2]]]]
            o[k] = unit[det]
    return R, ok


def project(const int[::1] proj, int base, const int[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], k
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] o = out
    with nogil:
        for k in range(n):
            o[k] = ((<long long>proj[X[k, 0]] * base + proj[X[k, 1]]) * base
                    + proj[X[k, 2]]) * base + proj[X[k, 3]]
    return out


def valid_mask(const int[:, ::1] add, const int[:, ::1] mul, const int[::1] neg,
               const int[::1] inv, const unsigned char[:, ::1] notin,
               const int[:, ::1] A, const int[:, ::1] C):
    cdef Py_ssize_t n = A.shape[0], k, i, j, m
    cdef Py_ssize_t nideals = notin.shape[0]
    out = np.empty(n, dtype=np.bool_)
    cdef unsigned char[::1] o = out.view(np.uint8)
    cdef int a0, a1, a2, a3, p0, p1, p2, p3
    cdef int rows[4][2]
    cdef int minors[6]
    cdef bint hit, good
    with nogil:
        for k in range(n):
            a0 = inv[A[k, 0]]
            a1 = inv[A[k, 2]]
            a2 = inv[A[k, 1]]
            a3 = inv[A[k, 3]]
            p0 = _mul2(add, mul, a0, C[k, 0], a1, C[k, 2])
            p1 = _mul2(add, mul, a0, C[k, 1], a1, C[k, 3])
            p2 = _mul2(add, mul, a2, C[k, 0], a3, C[k, 2])
            p3 = _mul2(add, mul, a2, C[k, 1], a3, C[k, 3])
            if not (inv[p0] == p0 and inv[p3] == p3 and inv[p1] == p2):
                o[k] = 0
                continue
            rows[0][0] = A[k, 0]; rows[0][1] = A[k, 1]
            rows[1][0] = A[k, 2]; rows[1][1] = A[k, 3]
            rows[2][0] = C[k, 0]; rows[2][1] = C[k, 1]
            rows[3][0] = C[k, 2]; rows[3][1] = C[k, 3]
            m = 0
            for i in range(4):
                for j in range(i + 1, 4):
                    minors[m] = add[mul[rows[i][0], rows[j][1]], neg[mul[rows[i][1], rows[j][0]]]]
                    m += 1
            good = True
            for i in range(nideals):
                hit = False
                for m in range(6):
                    if notin[i, minors[m]]:
                        hit = True
                        break
                if not hit:
                    good = False
                    break
            o[k] = good
    return out
