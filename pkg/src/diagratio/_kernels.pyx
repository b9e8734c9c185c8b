# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled float kernels. Must agree with ``_kernels_py`` to rounding."""

from libc.math cimport fabs, NAN, INFINITY
from libc.stdlib cimport malloc, free

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline double _tri2(double ax, double ay, double bx, double by, double cx, double cy) noexcept nogil:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


cdef double _area(const double* xs, const double* ys, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t k, j
    cdef double s = 0.0
    for k in range(n):
        j = k + 1 if k + 1 < n else 0
        s += xs[k] * ys[j] - xs[j] * ys[k]
    return 0.5 * s


cdef double _cevian(const double* xs, const double* ys, Py_ssize_t n, double r, double* work) noexcept nogil:
    # work holds 4*n doubles: bx, by, px, py
    cdef double* bx = work
    cdef double* by = work + n
    cdef double* px = work + 2 * n
    cdef double* py = work + 3 * n
    cdef Py_ssize_t k, i, j, i1, i2
    cdef double d1x, d1y, d2x, d2y, den, wx, wy, t, outer
    for k in range(n):
        i1 = (k + 1) % n
        i2 = (k + 2) % n
        bx[k] = xs[i1] + r * (xs[i2] - xs[i1])
        by[k] = ys[i1] + r * (ys[i2] - ys[i1])
    for j in range(n):
        i = j - 1 if j > 0 else n - 1
        d1x = bx[i] - xs[i]
        d1y = by[i] - ys[i]
        d2x = bx[j] - xs[j]
        d2y = by[j] - ys[j]
        den = d1x * d2y - d1y * d2x
        if den == 0.0:
            return NAN
        wx = xs[j] - xs[i]
        wy = ys[j] - ys[i]
        t = (wx * d2y - wy * d2x) / den
        px[j] = xs[i] + t * d1x
        py[j] = ys[i] + t * d1y
    outer = _area(xs, ys, n)
    return fabs(_area(px, py, n)) / outer


cdef double _closed(double a, double b, double c, double d) noexcept nogil:
    cdef double total = a + b + c + d + a * b
    cdef double phi = (
        d * (a + 1) * (c + d - 1) / (a + c + d)
        + c * (a + c - a * d) / (a + c)
        + a
        + b * (a * b + a * d + b * c) / (b + d)
        + (1 + b) * (b + d - b * c) / (b + c + d)
    )
    return (total - phi) / total


cdef inline bint _valid(double a, double b, double c, double d) noexcept nogil:
    return a > 0 and b > 0 and c >= 1 and d >= 1 and a - a * d + c > 0 and b - b * c + d > 0


def polygon_area(const double[::1] xs, const double[::1] ys):
    return _area(&xs[0], &ys[0], xs.shape[0])


def is_strictly_convex(const double[::1] xs, const double[::1] ys, double rel_tol=1e-12):
    return bool(_convex(&xs[0], &ys[0], xs.shape[0], rel_tol))


cdef bint _convex(const double* xs, const double* ys, Py_ssize_t n, double rel_tol) noexcept nogil:
    cdef Py_ssize_t i, j, k, k1, m
    cdef double diam2 = 0.0, dd, thresh, w
    if n < 3:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            dd = (xs[i] - xs[j]) * (xs[i] - xs[j]) + (ys[i] - ys[j]) * (ys[i] - ys[j])
            if dd > diam2:
                diam2 = dd
    thresh = 2.0 * rel_tol * diam2
    for k in range(n):
        k1 = (k + 1) % n
        for m in range(2, n + 1):
            if m == n:
                j = (k + n - 1) % n
                w = _tri2(xs[j], ys[j], xs[k], ys[k], xs[k1], ys[k1])
            else:
                j = (k + m) % n
                w = _tri2(xs[k], ys[k], xs[k1], ys[k1], xs[j], ys[j])
            if not w > thresh:
                return False
    return True


def peripheral_sum(const double[::1] xs, const double[::1] ys):
    cdef Py_ssize_t n = xs.shape[0], k, b, c
    cdef double s = 0.0
    for k in range(n):
        b = (k + 1) % n
        c = (k + 2) % n
        s += _tri2(xs[k], ys[k], xs[b], ys[b], xs[c], ys[c])
    return 0.5 * s


def cevian_ratio(const double[::1] xs, const double[::1] ys, double r):
    cdef Py_ssize_t n = xs.shape[0]
    cdef double* work = <double*> malloc(4 * n * sizeof(double))
    cdef double out
    if work == NULL:
        raise MemoryError()
    try:
        out = _cevian(&xs[0], &ys[0], n, r, work)
    finally:
        free(work)
    return out


def cevian_ratios(const double[:, ::1] X, const double[:, ::1] Y, double r):
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double* work = <double*> malloc(4 * n * sizeof(double))
    if work == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(m):
                ov[i] = _cevian(&X[i, 0], &Y[i, 0], n, r, work)
    finally:
        free(work)
    return out


def convex_mask(const double[:, ::1] X, const double[:, ::1] Y, double rel_tol=1e-12):
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1], i
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.empty(m, dtype=np.uint8)
    cdef cnp.uint8_t[::1] ov = out
    with nogil:
        for i in range(m):
            ov[i] = _convex(&X[i, 0], &Y[i, 0], n, rel_tol)
    return out.view(np.bool_)


def params_valid(double a, double b, double c, double d):
    return _valid(a, b, c, d)


def closed_form_ratio(double a, double b, double c, double d):
    return _closed(a, b, c, d)


def closed_form_ratios(const double[::1] A, const double[::1] B, const double[::1] C, const double[::1] D):
    cdef Py_ssize_t m = A.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(m):
            ov[i] = _closed(A[i], B[i], C[i], D[i])
    return out


cdef double _pentagon(double a, double b, double c, double d, double r) noexcept nogil:
    cdef double xs[5]
    cdef double ys[5]
    cdef double work[20]
    xs[0] = 1.0; ys[0] = 0.0
    xs[1] = c;   ys[1] = 2.0 * d
    xs[2] = 0.0; ys[2] = 2.0
    xs[3] = -a;  ys[3] = 0.0
    xs[4] = 0.0; ys[4] = -2.0 * b
    return _cevian(xs, ys, 5, r, work)


def pentagon_ratio(double a, double b, double c, double d, double r):
    return _pentagon(a, b, c, d, r)


cdef bint _feasible(double a, double b, double c, double d, double rel_tol) noexcept nogil:
    cdef double xs[5]
    cdef double ys[5]
    if not _valid(a, b, c, d):
        return False
    xs[0] = 1.0; ys[0] = 0.0
    xs[1] = c;   ys[1] = 2.0 * d
    xs[2] = 0.0; ys[2] = 2.0
    xs[3] = -a;  ys[3] = 0.0
    xs[4] = 0.0; ys[4] = -2.0 * b
    return _convex(xs, ys, 5, rel_tol)


def params_feasible(double a, double b, double c, double d, double rel_tol=1e-12):
    return _feasible(a, b, c, d, rel_tol)


def params_objective(double a, double b, double c, double d, double r):
    if not _feasible(a, b, c, d, 1e-12):
        return -INFINITY
    if r == 1.0:
        return _closed(a, b, c, d)
    return _pentagon(a, b, c, d, r)
