"""Optimal coherence filtration toward the maximally coherent state.

The best fidelity reachable by any stochastic SIO is ``lambda_max(B) / d``
with ``B = D rho D`` and ``D`` the pseudo-inverse square root of the
dephased state. A single diagonal Kraus operator built from the top
eigenvector of ``B`` attains it.
"""
from dataclasses import dataclass

import numpy as np

from cohfilt import linalg, sio, states
from cohfilt.errors import DegenerateDiagonal, DimensionMismatch

BOUND_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class FiltrationMatrix:
    mat: np.ndarray
    support: np.ndarray


@dataclass(frozen=True, eq=False)
class FiltrationResult:
    max_fidelity: float
    lambda_max: float
    optimal_kraus: sio.SIOKraus
    success_probability: float
    output_state: states.DensityMatrix
    achieved_fidelity: float

    @property
    def dim(self):
        return self.output_state.dim


def filtration_matrix(rho, zero_tol=states.ZERO_TOL):
    rho = states.density(rho)
    delta = states.dephase(rho)
    D = states.pinv_sqrt(delta, zero_tol)
    support = delta.probs > zero_tol
    B = D @ rho.mat @ D
    B = 0.5 * (B + B.conj().T)
    # rho_ii / rho_ii is exactly 1 on the support; keep it so incoherent states give exactly 1/d
    B[np.diag_indices_from(B)] = support
    B.flags.writeable = False
    return FiltrationMatrix(B, support)


def top_eigenpair(rho, zero_tol=states.ZERO_TOL):
    return linalg.hermitian_eig_max(filtration_matrix(rho, zero_tol).mat)


def _clamp_fidelity(value, d):
    lo, hi = 1.0 / d, 1.0
    if lo - BOUND_SLACK <= value < lo:
        return lo
    if hi < value <= hi + BOUND_SLACK:
        return hi
    return value


def max_fidelity(rho, zero_tol=states.ZERO_TOL):
    """Largest fidelity with the maximally coherent state reachable by stochastic SIO."""
    rho = states.density(rho)
    lam = top_eigenpair(rho, zero_tol).value
    return _clamp_fidelity(lam / rho.dim, rho.dim)


def optimal_kraus(rho, zero_tol=states.ZERO_TOL):
    """Diagonal Kraus ``a_j = conj(c_j) / sqrt(rho_jj)`` rescaled to ``max |a_j| = 1``.

    ``c`` is the top eigenvector of the filtration matrix; ``a_j = 0`` off the
    support of the dephased state.
    """
    rho = states.density(rho)
    c = top_eigenpair(rho, zero_tol).vector
    p = states.dephase(rho).probs
    a = np.zeros(rho.dim, dtype=np.complex128)
    support = p > zero_tol
    a[support] = c[support].conj() / np.sqrt(p[support])
    a = a / np.max(np.abs(a))
    return sio.validate_sio(np.diag(a))


def filtrate(rho, zero_tol=states.ZERO_TOL, check_tol=1e-9):
    rho = states.density(rho)
    pair = top_eigenpair(rho, zero_tol)
    fmax = _clamp_fidelity(pair.value / rho.dim, rho.dim)
    K = optimal_kraus(rho, zero_tol)
    out, prob = sio.apply_instrument(rho, sio.instrument([K]))
    achieved = states.fidelity_with_pure(out, states.mcs(rho.dim))
    if abs(achieved - fmax) > check_tol:
        raise AssertionError(f"optimal Kraus reaches {achieved!r}, expected {fmax!r}")
    return FiltrationResult(
        max_fidelity=fmax,
        lambda_max=pair.value,
        optimal_kraus=K,
        success_probability=prob,
        output_state=out,
        achieved_fidelity=achieved,
    )


def single_kraus_fidelity(rho, K):
    """Fidelity with the maximally coherent state after post-selecting on one Kraus."""
    out, _ = sio.apply_instrument(rho, sio.instrument([K]))
    return states.fidelity_with_pure(out, states.mcs(out.dim))


def instrument_fidelity(rho, ins):
    out, _ = sio.apply_instrument(rho, ins)
    return states.fidelity_with_pure(out, states.mcs(out.dim))


def qubit_closed_form(rho, zero_tol=states.ZERO_TOL):
    """Analytic qubit value ``(1 + |rho_01| / sqrt(rho_00 rho_11)) / 2``."""
    rho = states.density(rho)
    if rho.dim != 2:
        raise DimensionMismatch(f"qubit closed form needs d = 2, got {rho.dim}")
    p0, p1 = rho.mat[0, 0].real, rho.mat[1, 1].real
    if p0 <= zero_tol or p1 <= zero_tol:
        raise DegenerateDiagonal(f"diagonal ({p0:.3e}, {p1:.3e}) has a vanishing entry")
    return float((1.0 + abs(rho.mat[0, 1]) / np.sqrt(p0 * p1)) / 2.0)
