"""Brute-force checks that avoid the eigenvalue formula.

Samples are drawn in fixed-size chunks, each from its own generator seeded by
``(seed, chunk_index)``. Results therefore depend only on ``(seed, n_samples)``,
never on how many workers evaluate the chunks.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from cohfilt import _backend, filtration, states
from cohfilt.errors import DegenerateKraus, DimensionMismatch, LengthMismatch, NonPositiveEntry

CHUNK = 8192
DEGENERATE_WEIGHT = 1e-14


@dataclass(frozen=True, eq=False)
class OracleResult:
    best_fidelity: float
    best_kraus_diag: np.ndarray
    samples: int
    seed: int


def direct_fidelity(rho, a):
    """``sum_ij a_i rho_ij conj(a_j) / (d sum_j |a_j|^2 rho_jj)`` for one Kraus diagonal."""
    rho = states.density(rho)
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (rho.dim,):
        raise DimensionMismatch(f"Kraus diagonal of shape {a.shape} for dimension {rho.dim}")
    weight = float(np.abs(a) ** 2 @ rho.mat.diagonal().real)
    if weight <= DEGENERATE_WEIGHT:
        raise DegenerateKraus(f"success weight {weight:.3e} <= {DEGENERATE_WEIGHT:.0e}")
    return float((a @ rho.mat @ a.conj()).real / (rho.dim * weight))


def rayleigh_fidelity(rho, a, zero_tol=states.ZERO_TOL):
    """Same value as :func:`direct_fidelity`, via the Rayleigh quotient of the filtration matrix.

    The trial vector is ``Delta^{1/2} conj(a)`` normalized.
    """
    rho = states.density(rho)
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (rho.dim,):
        raise DimensionMismatch(f"Kraus diagonal of shape {a.shape} for dimension {rho.dim}")
    p = states.dephase(rho).probs
    weight = float(np.abs(a) ** 2 @ p)
    if weight <= DEGENERATE_WEIGHT:
        raise DegenerateKraus(f"success weight {weight:.3e} <= {DEGENERATE_WEIGHT:.0e}")
    phi = np.sqrt(p) * a.conj() / np.sqrt(weight)
    B = filtration.filtration_matrix(rho, zero_tol).mat
    return float((phi.conj() @ B @ phi).real / rho.dim)


def _chunk_best(rho_mat, d, seed, chunk, count):
    rng = np.random.default_rng([seed, chunk])
    a = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    fids = _backend.diag_kraus_fidelities(rho_mat, a)
    fids = np.where(np.isnan(fids), -np.inf, fids)
    k = int(np.argmax(fids))
    return float(fids[k]), a[k]


def random_search_fidelity(rho, n_samples, seed=0, workers=1):
    """Best sampled fidelity over Gaussian random diagonal Kraus operators."""
    rho = states.density(rho)
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    jobs = []
    for chunk, start in enumerate(range(0, n_samples, CHUNK)):
        jobs.append((chunk, min(CHUNK, n_samples - start)))
    mat = np.ascontiguousarray(rho.mat)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda job: _chunk_best(mat, rho.dim, seed, *job), jobs))
    else:
        results = [_chunk_best(mat, rho.dim, seed, *job) for job in jobs]
    best, best_a = results[0]
    for f, a in results[1:]:
        if f > best:
            best, best_a = f, a
    return OracleResult(best, best_a, n_samples, seed)


def random_permuted_fidelity(rho, n_samples, seed=0):
    """Largest fidelity over random ``P @ diag(a)`` Kraus operators, via full matrix algebra.

    Slow path used to confirm that the permutation factor never matters.
    """
    rho = states.density(rho)
    d = rho.dim
    rng = np.random.default_rng(seed)
    target = states.mcs(d).amplitudes
    best = -np.inf
    for _ in range(n_samples):
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        K = np.eye(d)[rng.permutation(d)] @ np.diag(a)
        out = K @ rho.mat @ K.conj().T
        best = max(best, float((target.conj() @ out @ target).real / np.trace(out).real))
    return best


def ratio_inequality_check(p, q):
    """``sum(p) / sum(q) <= max(p / q)`` for positive sequences of equal length."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1 or p.size < 1:
        raise LengthMismatch(f"shapes {p.shape} and {q.shape} must be equal and one-dimensional")
    if np.any(p <= 0) or np.any(q <= 0):
        raise NonPositiveEntry("all entries must be strictly positive")
    lhs = p.sum() / q.sum()
    rhs = np.max(p / q)
    # both sides carry relative round-off of a few ulps
    return bool(lhs <= rhs * (1.0 + 4 * np.finfo(float).eps * p.size))
