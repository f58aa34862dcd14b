"""Dense complex linear algebra for small Hermitian matrices.

Matrices are plain ``numpy`` ``complex128`` arrays. Eigenvalues come from the
cyclic Jacobi kernel in :mod:`cohfilt._backend`.
"""
from dataclasses import dataclass

import numpy as np

from cohfilt import _backend
from cohfilt.errors import DimensionMismatch, NoConvergence, NotHermitian

HERM_TOL = 1e-10
EIG_TOL = 1e-11
PSD_TOL = 1e-10
MAX_SWEEPS = 200
MAX_DIM = 256

# relative off-diagonal norm at which Jacobi sweeps stop; well inside EIG_TOL
_JACOBI_STOP = 1e-14


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


def as_matrix(A):
    """Coerce to a square, finite ``complex128`` array."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"dimension {A.shape[0]} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(A)):
        raise DimensionMismatch("matrix has non-finite entries")
    return A


def hermitian_deviation(A):
    A = as_matrix(A)
    return float(np.max(np.abs(A - A.conj().T)))


def check_hermitian(A, herm_tol=HERM_TOL):
    A = as_matrix(A)
    dev = hermitian_deviation(A)
    if dev > herm_tol:
        raise NotHermitian(f"max |A - A^dagger| = {dev:.3e} exceeds {herm_tol:.1e}")
    return A


def eigh(A, herm_tol=HERM_TOL, max_sweeps=MAX_SWEEPS):
    """All eigenpairs of a Hermitian matrix, eigenvalues in ascending order.

    Sorting is stable, so equal eigenvalues keep Jacobi column order.
    """
    A = check_hermitian(A, herm_tol)
    # symmetrize so that round-off asymmetry cannot bias the rotations
    A = 0.5 * (A + A.conj().T)
    w, V, sweeps = _backend.jacobi_eigh(A, _JACOBI_STOP, max_sweeps)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def eigvalsh(A, herm_tol=HERM_TOL):
    return eigh(A, herm_tol)[0]


def hermitian_eig_max(A, tol=EIG_TOL, herm_tol=HERM_TOL):
    """Largest eigenvalue of a Hermitian matrix and one unit eigenvector.

    Eigenvalues within ``tol * ||A||_F`` of the maximum count as tied; the
    lowest Jacobi column among them wins. The vector's phase is fixed so its
    largest-magnitude entry (first on ties) is real and positive.
    """
    A = check_hermitian(A, herm_tol)
    A = 0.5 * (A + A.conj().T)
    w, V, sweeps = _backend.jacobi_eigh(A, _JACOBI_STOP, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge within {MAX_SWEEPS} sweeps")
    scale = max(float(np.linalg.norm(A)), 1.0)
    top = float(np.max(w))
    k = int(np.flatnonzero(w >= top - tol * scale)[0])
    v = V[:, k]
    v = v / np.linalg.norm(v)
    mags = np.abs(v)
    j = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    v = v * (abs(v[j]) / v[j])
    return EigenPair(float(w[k]), v)


def min_eigenvalue(A, herm_tol=HERM_TOL):
    return float(eigvalsh(A, herm_tol)[0])


def is_psd(A, tol=PSD_TOL, herm_tol=HERM_TOL):
    """True iff the smallest eigenvalue of Hermitian ``A`` is at least ``-tol``."""
    return min_eigenvalue(A, herm_tol) >= -tol


def permutation_matrix(perm):
    """Matrix ``P`` with ``P e_j = e_{perm[j]}`` for a zero-based permutation."""
    perm = np.asarray(perm, dtype=int)
    d = perm.size
    if sorted(perm.tolist()) != list(range(d)):
        raise DimensionMismatch(f"{perm.tolist()} is not a permutation of 0..{d - 1}")
    P = np.zeros((d, d), dtype=np.complex128)
    P[perm, np.arange(d)] = 1.0
    return P


def apply_permutation(perm, A):
    """Return ``P A P^dagger`` for the permutation ``perm`` (zero-based)."""
    A = as_matrix(A)
    if len(perm) != A.shape[0]:
        raise DimensionMismatch(f"permutation of length {len(perm)} for dimension {A.shape[0]}")
    P = permutation_matrix(perm)
    return P @ A @ P.conj().T
