"""Density matrices in the fixed incoherent basis."""
from dataclasses import dataclass

import numpy as np

from cohfilt import linalg
from cohfilt.errors import (
    DimensionMismatch,
    InvalidDimension,
    InvalidRank,
    NotHermitian,
    NotPSD,
    TraceNotOne,
)

STATE_TOL = 1e-10
ZERO_TOL = 1e-12
NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    mat: np.ndarray

    @property
    def dim(self):
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def projector(self):
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class DiagonalState:
    probs: np.ndarray

    @property
    def dim(self):
        return self.probs.shape[0]


def _frozen(arr):
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


def validate_density(M, herm_tol=STATE_TOL, trace_tol=STATE_TOL, psd_tol=STATE_TOL):
    """Check Hermiticity, unit trace and positivity, in that order.

    The stored matrix is the exact Hermitian part of ``M``.
    """
    M = linalg.as_matrix(M)
    dev = linalg.hermitian_deviation(M)
    if dev > herm_tol:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3e} > {herm_tol:.1e}")
    M = 0.5 * (M + M.conj().T)
    tr = float(np.trace(M).real)
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(f"trace = {tr:.12g}, |trace - 1| = {abs(tr - 1.0):.3e} > {trace_tol:.1e}")
    lo = linalg.min_eigenvalue(M)
    if lo < -psd_tol:
        raise NotPSD(f"min eigenvalue = {lo:.3e} < -{psd_tol:.1e}")
    return DensityMatrix(_frozen(M))


def density(M):
    """Accept a ``DensityMatrix`` unchanged, validate anything else."""
    if isinstance(M, DensityMatrix):
        return M
    return validate_density(M)


def pure_state(amplitudes, tol=NORM_TOL):
    amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if amps.size < 1:
        raise InvalidDimension("empty amplitude vector")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > tol:
        raise TraceNotOne(f"amplitude norm {norm:.15g} differs from 1 by more than {tol:.0e}")
    return PureState(_frozen(amps))


def pure_density(phi):
    """Density matrix of a pure state (vector or ``PureState``)."""
    if not isinstance(phi, PureState):
        phi = pure_state(phi)
    return validate_density(phi.projector())


def diagonal_state(probs, neg_tol=1e-12, sum_tol=STATE_TOL):
    p = np.asarray(probs, dtype=float).ravel()
    if p.size < 1:
        raise InvalidDimension("empty probability vector")
    if np.any(p < -neg_tol):
        raise NotPSD(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > sum_tol:
        raise TraceNotOne(f"probabilities sum to {p.sum():.12g}")
    return DiagonalState(_frozen(np.clip(p, 0.0, None)))


def dephase(rho):
    """Diagonal part of ``rho`` as a probability vector."""
    rho = density(rho)
    return DiagonalState(_frozen(np.clip(rho.mat.diagonal().real, 0.0, None)))


def dephased_matrix(rho):
    return np.diag(dephase(rho).probs).astype(np.complex128)


def pinv_sqrt(delta, zero_tol=ZERO_TOL):
    """Diagonal matrix with ``p_i**-0.5`` where ``p_i > zero_tol`` and 0 elsewhere."""
    p = delta.probs if isinstance(delta, DiagonalState) else np.asarray(delta, dtype=float)
    out = np.zeros_like(p)
    support = p > zero_tol
    out[support] = 1.0 / np.sqrt(p[support])
    return np.diag(out).astype(np.complex128)


def support_mask(rho, zero_tol=ZERO_TOL):
    return dephase(rho).probs > zero_tol


def mcs(d):
    """The maximally coherent state, uniform amplitudes ``1/sqrt(d)``."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidDimension(f"dimension must be a positive integer, got {d!r}")
    return PureState(_frozen(np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)))


def fidelity_with_pure(rho, phi):
    """``<phi|rho|phi>``, clamped to [0, 1] after tiny excursions."""
    rho = density(rho)
    if not isinstance(phi, PureState):
        phi = pure_state(phi)
    if rho.dim != phi.dim:
        raise DimensionMismatch(f"state dimension {rho.dim} vs target dimension {phi.dim}")
    v = phi.amplitudes
    f = float((v.conj() @ rho.mat @ v).real)
    return min(max(f, 0.0), 1.0)


def coherence_rank(phi, zero_tol=ZERO_TOL):
    """Number of amplitudes with ``|amp|**2 > zero_tol``."""
    amps = phi.amplitudes if isinstance(phi, PureState) else np.asarray(phi)
    return int(np.count_nonzero(np.abs(amps) ** 2 > zero_tol))


def is_incoherent(rho, tol=STATE_TOL):
    rho = density(rho)
    off = rho.mat - np.diag(rho.mat.diagonal())
    return bool(np.max(np.abs(off), initial=0.0) <= tol)


def max_offdiagonal(rho):
    rho = density(rho)
    off = rho.mat - np.diag(rho.mat.diagonal())
    return float(np.max(np.abs(off), initial=0.0))


def _generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density(d, rank=None, seed=None):
    """Ginibre-induced state ``G G^dagger / Tr`` with ``G`` of shape (d, rank).

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidDimension(f"dimension must be a positive integer, got {d!r}")
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise InvalidRank(f"rank must lie in [1, {d}], got {rank}")
    rng = _generator(seed)
    G = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    M = G @ G.conj().T
    M = M / np.trace(M).real
    return validate_density(M)


def random_pure(d, seed=None, support=None):
    """Random pure state, optionally with amplitudes only on ``support`` indices."""
    rng = _generator(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    if support is not None:
        mask = np.zeros(d, dtype=bool)
        mask[list(support)] = True
        v[~mask] = 0.0
    return pure_state(v / np.linalg.norm(v))


def embed(rho, indices, d):
    """Place a d'-dimensional state on the given basis indices of a d-dimensional space.

    All other rows and columns are exactly zero.
    """
    rho = density(rho)
    indices = list(indices)
    if len(indices) != rho.dim or len(set(indices)) != len(indices):
        raise DimensionMismatch(f"need {rho.dim} distinct indices, got {indices}")
    if min(indices) < 0 or max(indices) >= d:
        raise DimensionMismatch(f"indices {indices} out of range for dimension {d}")
    M = np.zeros((d, d), dtype=np.complex128)
    M[np.ix_(indices, indices)] = rho.mat
    return validate_density(M)


def diagonal_unitary(phases):
    return np.diag(np.exp(1j * np.asarray(phases, dtype=float)))
