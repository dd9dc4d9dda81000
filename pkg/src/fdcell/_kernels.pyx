# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cnp.import_array()


def lp2_max(int64_t[:, ::1] rows):
    cdef Py_ssize_t m = rows.shape[0]
    cdef Py_ssize_t p, q, r
    cdef int64_t a1, b1, c1, a2, b2, c2, det, xn, yn
    cdef int64_t bx = 0, by = 0, bd = 0, lhs, rhs
    cdef bint feasible
    for p in range(m):
        a1 = rows[p, 0]; b1 = rows[p, 1]; c1 = rows[p, 2]
        for q in range(p + 1, m):
            a2 = rows[q, 0]; b2 = rows[q, 1]; c2 = rows[q, 2]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            xn = c1 * b2 - c2 * b1
            yn = a1 * c2 - a2 * c1
            if det < 0:
                det = -det; xn = -xn; yn = -yn
            feasible = True
            for r in range(m):
                if rows[r, 0] * xn + rows[r, 1] * yn > rows[r, 2] * det:
                    feasible = False
                    break
            if not feasible:
                continue
            if bd == 0:
                bx = xn; by = yn; bd = det
                continue
            lhs = (xn + yn) * bd
            rhs = (bx + by) * det
            if lhs > rhs or (lhs == rhs and (xn * bd > bx * det or
                                             (xn * bd == bx * det and yn * bd > by * det))):
                bx = xn; by = yn; bd = det
    return bx, by, bd


def monomials(coeffs, exps):
    cdef double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef int64_t[:, ::1] e = np.ascontiguousarray(exps, dtype=np.int64)
    cdef Py_ssize_t E = e.shape[0], A = e.shape[1], d = c.shape[1]
    cdef Py_ssize_t P = (int(np.max(exps)) if E and A else 0) + 1
    # power table: pw[k, p, t] = c[k, t] ** p
    pw_arr = np.empty((A, P, d), dtype=np.float64)
    cdef double[:, :, ::1] pw = pw_arr
    out_arr = np.ones((E, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k, p, t
    cdef int64_t n
    with nogil:
        for k in range(A):
            for t in range(d):
                pw[k, 0, t] = 1.0
            for p in range(1, P):
                for t in range(d):
                    pw[k, p, t] = pw[k, p - 1, t] * c[k, t]
        for i in range(E):
            for k in range(A):
                n = e[i, k]
                if n == 0:
                    continue
                for t in range(d):
                    out[i, t] *= pw[k, n, t]
    return out_arr
