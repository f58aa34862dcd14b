"""Pure numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable. Signatures and
return conventions match the Cython module exactly.
"""
import math

import numpy as np


def jacobi_eigh(A, tol=1e-14, max_sweeps=200):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, V, sweeps)`` with ``A @ V[:, k] ~= w[k] * V[:, k]``.
    ``sweeps`` is -1 when the sweep cap was hit before convergence.
    """
    A = np.array(A, dtype=np.complex128, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    norm = math.sqrt(float(np.sum(A.real**2 + A.imag**2)))
    if n == 1 or norm == 0.0:
        return A.diagonal().real.copy(), V, 0
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        upper = A[iu]
        off = math.sqrt(2.0 * float(np.sum(upper.real**2 + upper.imag**2)))
        if off <= tol * norm:
            return A.diagonal().real.copy(), V, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                e = apq / r
                theta = 0.5 * math.atan2(2.0 * r, A[q, q].real - A[p, p].real)
                c = math.cos(theta)
                s = math.sin(theta)
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * e.conjugate() * col_q
                A[:, q] = s * col_p + c * e.conjugate() * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * e * row_q
                A[q, :] = s * row_p + c * e * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                v_p = V[:, p].copy()
                v_q = V[:, q]
                V[:, p] = c * v_p - s * e.conjugate() * v_q
                V[:, q] = s * v_p + c * e.conjugate() * v_q
    return A.diagonal().real.copy(), V, -1


def diag_kraus_fidelities(rho, a):
    """Fidelity with the maximally coherent state after filtering by diag(a).

    ``a`` has one candidate Kraus diagonal per row. Rows whose success weight
    vanishes yield ``nan``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    a = np.asarray(a, dtype=np.complex128)
    d = rho.shape[0]
    num = np.einsum("ni,ij,nj->n", a, rho, a.conj()).real
    den = d * ((a.real**2 + a.imag**2) @ rho.diagonal().real)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), np.nan)
    return out
