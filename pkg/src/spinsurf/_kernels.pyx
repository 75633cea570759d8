# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: FD stencils and cumulative trapezoid integration.

Mirror of ``_kernels_py``; selected at import time by ``_backend``.
"""

import numpy as np

BACKEND = "cython"


def fd_diff_2d(values, double h, int axis, bint periodic):
    v = np.ascontiguousarray(values, dtype=np.complex128)
    out = np.empty_like(v)
    cdef const double complex[:, ::1] a = v
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t n0 = a.shape[0], n1 = a.shape[1]
    cdef Py_ssize_t i, j
    cdef double inv2h = 1.0 / (2.0 * h)
    if axis == 0:
        for j in range(n1):
            for i in range(1, n0 - 1):
                o[i, j] = (a[i + 1, j] - a[i - 1, j]) * inv2h
            if periodic:
                o[0, j] = (a[1, j] - a[n0 - 1, j]) * inv2h
                o[n0 - 1, j] = (a[0, j] - a[n0 - 2, j]) * inv2h
            else:
                o[0, j] = (-3.0 * a[0, j] + 4.0 * a[1, j] - a[2, j]) * inv2h
                o[n0 - 1, j] = (3.0 * a[n0 - 1, j] - 4.0 * a[n0 - 2, j] + a[n0 - 3, j]) * inv2h
    else:
        for i in range(n0):
            for j in range(1, n1 - 1):
                o[i, j] = (a[i, j + 1] - a[i, j - 1]) * inv2h
            if periodic:
                o[i, 0] = (a[i, 1] - a[i, n1 - 1]) * inv2h
                o[i, n1 - 1] = (a[i, 0] - a[i, n1 - 2]) * inv2h
            else:
                o[i, 0] = (-3.0 * a[i, 0] + 4.0 * a[i, 1] - a[i, 2]) * inv2h
                o[i, n1 - 1] = (3.0 * a[i, n1 - 1] - 4.0 * a[i, n1 - 2] + a[i, n1 - 3]) * inv2h
    return out


def cumtrapz_2d(values, double h, int axis):
    v = np.ascontiguousarray(values, dtype=np.complex128)
    out = np.zeros_like(v)
    cdef const double complex[:, ::1] a = v
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t n0 = a.shape[0], n1 = a.shape[1]
    cdef Py_ssize_t i, j
    cdef double half_h = 0.5 * h
    if axis == 0:
        for j in range(n1):
            for i in range(1, n0):
                o[i, j] = o[i - 1, j] + half_h * (a[i - 1, j] + a[i, j])
    else:
        for i in range(n0):
            for j in range(1, n1):
                o[i, j] = o[i, j - 1] + half_h * (a[i, j - 1] + a[i, j])
    return out
