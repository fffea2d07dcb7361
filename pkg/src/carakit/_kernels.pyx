# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels; see ``_fallback`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, atan2, fabs, cos, sin, M_PI

cnp.import_array()


def slack_c(phi, omega):
    cdef const double complex[::1] p = np.ascontiguousarray(phi, dtype=complex).ravel()
    cdef const double complex[::1] w = np.ascontiguousarray(omega, dtype=complex).ravel()
    cdef Py_ssize_t n = p.shape[0], j
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double p2, w2
    for j in range(n):
        p2 = p[j].real * p[j].real + p[j].imag * p[j].imag
        w2 = w[j].real * w[j].real + w[j].imag * w[j].imag
        o[j] = (1.0 - w2) * (1.0 - p2) - 4.0 * sqrt(p2) * fabs(w[j].imag)
    return out.reshape(np.shape(phi))


def slack_d(F, phi):
    cdef const double complex[::1] f = np.ascontiguousarray(F, dtype=complex).ravel()
    cdef const double complex[::1] p = np.ascontiguousarray(phi, dtype=complex).ravel()
    cdef Py_ssize_t n = p.shape[0], j
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double a
    for j in range(n):
        a = sqrt(p[j].real * p[j].real + p[j].imag * p[j].imag)
        o[j] = atan2(1.0 - a * a, 2.0 * a) - fabs(atan2(f[j].imag, f[j].real))
    return out.reshape(np.shape(phi))


def rotation_worst(phi, omega, Py_ssize_t n_lambda):
    cdef const double complex[::1] p = np.ascontiguousarray(phi, dtype=complex).ravel()
    cdef const double complex[::1] w = np.ascontiguousarray(omega, dtype=complex).ravel()
    cdef Py_ssize_t n = p.shape[0], j, k, bi = 0, bk = 0
    cdef double best = -1.0, lr, li, ar, ai, nr, ni, dr, di, m
    cdef double[::1] cr = np.cos(2 * np.pi * np.arange(n_lambda) / n_lambda)
    cdef double[::1] ci = np.sin(2 * np.pi * np.arange(n_lambda) / n_lambda)
    for j in range(n):
        for k in range(n_lambda):
            # a = lambda * phi
            ar = cr[k] * p[j].real - ci[k] * p[j].imag
            ai = cr[k] * p[j].imag + ci[k] * p[j].real
            nr = ar + w[j].real
            ni = ai + w[j].imag
            dr = 1.0 + ar * w[j].real - ai * w[j].imag
            di = ar * w[j].imag + ai * w[j].real
            m = sqrt((nr * nr + ni * ni) / (dr * dr + di * di))
            if m > best:
                best = m
                bi = j
                bk = k
    return best, bi, bk


def leaf_contains(w):
    cdef const double complex[::1] v = np.ascontiguousarray(w, dtype=complex).ravel()
    cdef Py_ssize_t n = v.shape[0], j
    out = np.empty(n, dtype=np.bool_)
    cdef cnp.npy_bool[::1] o = out
    cdef double x, y, s
    for j in range(n):
        x = v[j].real
        y = v[j].imag
        s = x * x + y * y
        o[j] = (4.0 * fabs(y) * sqrt(s) < (1.0 - s) * (1.0 - s)) and s < 1.0
    return out.reshape(np.shape(w))
