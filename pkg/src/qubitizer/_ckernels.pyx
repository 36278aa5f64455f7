# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for gate application and the Jacobi eigensolver."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, hypot, sqrt

cnp.import_array()

NAME = "cython"

ctypedef double complex cplx


def apply_1q(cplx[:, ::1] mat, cplx[:, :] u, long tmask, long cmask, long cval):
    cdef Py_ssize_t dim = mat.shape[0], ncol = mat.shape[1]
    cdef Py_ssize_t i, j, c
    cdef cplx u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef cplx a, b
    for i in range(dim):
        if (i & tmask) != 0 or (i & cmask) != cval:
            continue
        j = i | tmask
        for c in range(ncol):
            a = mat[i, c]
            b = mat[j, c]
            mat[i, c] = u00 * a + u01 * b
            mat[j, c] = u10 * a + u11 * b


def apply_swap(cplx[:, ::1] mat, long amask, long bmask, long cmask, long cval):
    cdef Py_ssize_t dim = mat.shape[0], ncol = mat.shape[1]
    cdef Py_ssize_t i, j, c
    cdef cplx tmp
    for i in range(dim):
        if (i & amask) == 0 or (i & bmask) != 0 or (i & cmask) != cval:
            continue
        j = i ^ amask ^ bmask
        for c in range(ncol):
            tmp = mat[i, c]
            mat[i, c] = mat[j, c]
            mat[j, c] = tmp


cdef inline double cabs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


def jacobi_eigh(a_in, double tol, int max_sweeps):
    cdef cplx[:, ::1] a = np.array(a_in, dtype=complex, order="C")
    cdef Py_ssize_t n = a.shape[0]
    v_arr = np.eye(n, dtype=complex)
    cdef cplx[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef double total = 0.0, off, ab, app, aqq, theta, t, c, s, scale
    cdef cplx b, ph, cph, x, y
    cdef int sweep
    cdef bint polished = False
    for p in range(n):
        for q in range(n):
            total += cabs2(a[p, q])
    scale = sqrt(total)
    if scale < 1.0:
        scale = 1.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += cabs2(a[p, q])
        if sqrt(off) < tol * scale:
            if polished or off == 0.0 or sweep == max_sweeps:
                w = np.array([a[k, k].real for k in range(n)])
                return w, v_arr, sweep
            polished = True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                ab = hypot(b.real, b.imag)  # cabs2 underflows for tiny entries
                if ab < 1e-300:
                    continue
                ph = b / ab
                cph = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * ab)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                # columns: A <- A J with J = [[c, s], [-s cph, c cph]]
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x - s * cph * y
                    a[k, q] = s * x + c * cph * y
                # rows: A <- J^dagger A
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - s * ph * y
                    a[q, k] = s * x + c * ph * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * ab
                a[q, q] = aqq + t * ab
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x - s * cph * y
                    v[k, q] = s * x + c * cph * y
    w = np.array([a[k, k].real for k in range(n)])
    return w, v_arr, -1
