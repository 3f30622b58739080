# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word-enumeration kernels. Same API as ``_kernels_py``."""

import numpy as np
from libc.math cimport fabs, fmax
from libc.stdint cimport int64_t

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex csqrt(double complex)
    double creal(double complex)
    double cimag(double complex)

BACKEND = "cython"


def extend_words(double complex[:, ::1] mats, int64_t[::1] last,
                 double complex[:, ::1] gens, int64_t[::1] inverse_of,
                 Py_ssize_t max_out):
    cdef Py_ssize_t n = mats.shape[0], m = gens.shape[0]
    cdef Py_ssize_t cap = n * m
    if cap > max_out:
        cap = max_out
    out_np = np.empty((cap, 4), dtype=np.complex128)
    last_np = np.empty(cap, dtype=np.int64)
    cdef double complex[:, ::1] out = out_np
    cdef int64_t[::1] out_last = last_np
    cdef Py_ssize_t i, j, k = 0
    cdef int64_t prev
    cdef double complex a, b, c, d
    with nogil:
        for i in range(n):
            if k >= cap:
                break
            a = mats[i, 0]; b = mats[i, 1]; c = mats[i, 2]; d = mats[i, 3]
            prev = last[i]
            for j in range(m):
                if prev >= 0 and inverse_of[prev] == j:
                    continue
                if k >= cap:
                    break
                out[k, 0] = a * gens[j, 0] + b * gens[j, 2]
                out[k, 1] = a * gens[j, 1] + b * gens[j, 3]
                out[k, 2] = c * gens[j, 0] + d * gens[j, 2]
                out[k, 3] = c * gens[j, 1] + d * gens[j, 3]
                out_last[k] = j
                k += 1
    return out_np[:k], last_np[:k]


def limit_fixed_points(double complex[:, ::1] mats, double tol):
    cdef Py_ssize_t n = mats.shape[0], i, k = 0
    out_np = np.empty(2 * n, dtype=np.complex128)
    cdef double complex[::1] out = out_np
    cdef double complex a, b, c, d, det, tr2, root
    cdef double scale
    with nogil:
        for i in range(n):
            a = mats[i, 0]; b = mats[i, 1]; c = mats[i, 2]; d = mats[i, 3]
            det = a * d - b * c
            tr2 = (a + d) * (a + d) / det
            scale = fmax(1.0, fmax(fmax(cabs(a), cabs(b)), fmax(cabs(c), cabs(d))))
            if cabs(tr2 - 4) <= tol:
                if cabs(b) <= tol * scale and cabs(c) <= tol * scale:
                    continue
                if cabs(c) > 1e-13 * scale:
                    out[k] = (a - d) / (2 * c)
                    k += 1
                continue
            if fabs(cimag(tr2)) <= tol and creal(tr2) < 4:
                continue
            if cabs(c) <= 1e-13 * scale:
                out[k] = b / (d - a)
                k += 1
                continue
            # stable quadratic roots of c z^2 + (d - a) z - b
            root = csqrt((a - d) * (a - d) + 4 * b * c)
            if cabs(a - d + root) < cabs(a - d - root):
                root = -root
            out[k] = (a - d + root) / (2 * c)
            out[k + 1] = -2 * b / (a - d + root)
            k += 2
    return out_np[:k]
