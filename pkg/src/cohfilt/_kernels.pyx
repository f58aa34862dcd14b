# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: complex Hermitian Jacobi and batched diagonal-Kraus fidelity."""
import numpy as np
cimport cython
from libc.math cimport sqrt, atan2, cos, sin, NAN

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)


cdef inline double _abs2(double complex z) nogil:
    return creal(z) * creal(z) + cimag(z) * cimag(z)


def jacobi_eigh(A_in, double tol=1e-14, int max_sweeps=200):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, V, sweeps)``; ``sweeps`` is -1 if the cap was hit.
    """
    cdef double complex[:, ::1] A = np.array(A_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = A.shape[0]
    V_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double norm = 0.0, off, r, theta, c, s
    cdef double complex e, ec, x, y
    w = np.empty(n, dtype=np.float64)
    cdef double[::1] wv = w

    with nogil:
        for p in range(n):
            for q in range(n):
                norm += _abs2(A[p, q])
        norm = sqrt(norm)
    if n == 1 or norm == 0.0:
        for p in range(n):
            wv[p] = creal(A[p, p])
        return w, V_arr, 0

    sweep = 0
    with nogil:
        while True:
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += _abs2(A[p, q])
            off = sqrt(2.0 * off)
            if off <= tol * norm:
                break
            if sweep == max_sweeps:
                sweep = -1
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    r = cabs(A[p, q])
                    if r < 1e-300:
                        continue
                    e = A[p, q] / r
                    ec = conj(e)
                    theta = 0.5 * atan2(2.0 * r, creal(A[q, q]) - creal(A[p, p]))
                    c = cos(theta)
                    s = sin(theta)
                    for k in range(n):
                        x = A[k, p]
                        y = A[k, q]
                        A[k, p] = c * x - s * ec * y
                        A[k, q] = s * x + c * ec * y
                    for k in range(n):
                        x = A[p, k]
                        y = A[q, k]
                        A[p, k] = c * x - s * e * y
                        A[q, k] = s * x + c * e * y
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    A[p, p] = creal(A[p, p])
                    A[q, q] = creal(A[q, q])
                    for k in range(n):
                        x = V[k, p]
                        y = V[k, q]
                        V[k, p] = c * x - s * ec * y
                        V[k, q] = s * x + c * ec * y
            sweep += 1
        for p in range(n):
            wv[p] = creal(A[p, p])
    return w, V_arr, sweep


def diag_kraus_fidelities(rho_in, a_in):
    """Fidelity with the maximally coherent state after filtering by diag(a), per row of ``a``."""
    cdef const double complex[:, ::1] rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef const double complex[:, ::1] a = np.ascontiguousarray(a_in, dtype=np.complex128)
    cdef Py_ssize_t d = rho.shape[0]
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t t, i, j
    cdef double num, den
    cdef double complex row
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for t in range(m):
            num = 0.0
            den = 0.0
            for i in range(d):
                den += _abs2(a[t, i]) * creal(rho[i, i])
                row = 0.0
                for j in range(d):
                    row = row + rho[i, j] * conj(a[t, j])
                num += creal(a[t, i] * row)
            den *= d
            if den > 0.0:
                ov[t] = num / den
            else:
                ov[t] = NAN
    return out
