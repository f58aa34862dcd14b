"""Strictly incoherent Kraus operators and stochastic instruments.

A Kraus operator is strictly incoherent when every row and every column holds
at most one nonzero entry, so it factors as a permutation times a diagonal.
"""
from dataclasses import dataclass

import numpy as np

from cohfilt import linalg, states
from cohfilt.errors import (
    DimensionMismatch,
    InvalidDimension,
    NotStrictlyIncoherent,
    NotSubnormalized,
    ZeroProbability,
    ZeroWeight,
)

SIO_TOL = 1e-12
PSD_TOL = 1e-10
ZERO_PROB = 1e-14


@dataclass(frozen=True, eq=False)
class SIOKraus:
    mat: np.ndarray

    @property
    def dim(self):
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class SIOInstrument:
    kraus: tuple

    @property
    def dim(self):
        return self.kraus[0].dim

    def effect(self):
        """``sum_mu K_mu^dagger K_mu``."""
        return sum(K.mat.conj().T @ K.mat for K in self.kraus)


@dataclass(frozen=True)
class PermDiagDecomposition:
    perm: tuple
    diag: np.ndarray

    def reassemble(self):
        return linalg.permutation_matrix(self.perm) @ np.diag(self.diag)


@dataclass(frozen=True)
class IncoherentProjector:
    indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if not idx:
            raise InvalidDimension("incoherent projector needs at least one index")
        object.__setattr__(self, "indices", idx)

    def matrix(self, d):
        P = np.zeros((d, d), dtype=np.complex128)
        P[list(self.indices), list(self.indices)] = 1.0
        return P


def _structure_violation(K, sio_tol):
    nz = np.abs(K) > sio_tol
    rows = np.flatnonzero(nz.sum(axis=1) > 1)
    if rows.size:
        return "row", int(rows[0])
    cols = np.flatnonzero(nz.sum(axis=0) > 1)
    if cols.size:
        return "column", int(cols[0])
    return None


def validate_sio(K, sio_tol=SIO_TOL, psd_tol=PSD_TOL):
    """Validate structure and ``K^dagger K <= I``.

    Raises NotStrictlyIncoherent naming the first offending row (zero-based)
    or column, or NotSubnormalized.
    """
    if isinstance(K, SIOKraus):
        return K
    K = linalg.as_matrix(K)
    bad = _structure_violation(K, sio_tol)
    if bad is not None:
        axis, idx = bad
        raise NotStrictlyIncoherent(
            f"{axis} {idx} has more than one entry above {sio_tol:.0e}",
            index=idx,
            axis=axis,
        )
    gram = K.conj().T @ K
    top = float(np.max(linalg.eigvalsh(gram)))
    if top > 1.0 + psd_tol:
        raise NotSubnormalized(f"lambda_max(K^dagger K) = {top:.12g} > 1")
    K = K.copy()
    K[np.abs(K) <= sio_tol] = 0.0
    K.flags.writeable = False
    return SIOKraus(K)


def instrument(kraus_list, sio_tol=SIO_TOL, psd_tol=PSD_TOL):
    """Build an ``SIOInstrument`` from matrices or ``SIOKraus`` values."""
    ks = tuple(validate_sio(K, sio_tol, psd_tol) for K in kraus_list)
    if not ks:
        raise InvalidDimension("instrument needs at least one Kraus operator")
    d = ks[0].dim
    if any(K.dim != d for K in ks):
        raise DimensionMismatch("Kraus operators of different dimensions")
    ins = SIOInstrument(ks)
    top = float(np.max(linalg.eigvalsh(ins.effect())))
    if top > 1.0 + psd_tol:
        raise NotSubnormalized(f"lambda_max(sum K^dagger K) = {top:.12g} > 1")
    return ins


def decompose(K):
    """Factor ``K = P_perm @ diag(a)``.

    ``perm[j]`` is the row that column ``j`` maps to. Zero columns and unused
    rows are paired in ascending order.
    """
    K = validate_sio(K)
    M = K.mat
    d = M.shape[0]
    perm = [-1] * d
    diag = np.zeros(d, dtype=np.complex128)
    used = set()
    for j in range(d):
        nz = np.flatnonzero(M[:, j] != 0)
        if nz.size:
            i = int(nz[0])
            perm[j] = i
            diag[j] = M[i, j]
            used.add(i)
    free_rows = iter(i for i in range(d) if i not in used)
    for j in range(d):
        if perm[j] < 0:
            perm[j] = next(free_rows)
    diag.flags.writeable = False
    return PermDiagDecomposition(tuple(perm), diag)


def _as_instrument(ins):
    if isinstance(ins, SIOInstrument):
        return ins
    if isinstance(ins, (SIOKraus, np.ndarray)):
        return instrument([ins])
    return instrument(ins)


def unnormalized_output(rho, ins):
    """``sum_mu K_mu rho K_mu^dagger`` without renormalization."""
    rho = states.density(rho)
    ins = _as_instrument(ins)
    if ins.dim != rho.dim:
        raise DimensionMismatch(f"instrument dimension {ins.dim} vs state dimension {rho.dim}")
    return sum(K.mat @ rho.mat @ K.mat.conj().T for K in ins.kraus)


def apply_instrument(rho, ins):
    """Post-selected output state and success probability.

    Raises ZeroProbability when the instrument (almost) never fires on ``rho``.
    """
    out = unnormalized_output(rho, ins)
    prob = float(np.trace(out).real)
    if prob <= ZERO_PROB:
        raise ZeroProbability(f"success probability {prob:.3e} <= {ZERO_PROB:.0e}")
    return states.validate_density(out / prob), prob


def projector_compress(rho, P):
    """Principal submatrix of ``rho`` on the projector's indices, and its trace."""
    rho = states.density(rho)
    if not isinstance(P, IncoherentProjector):
        P = IncoherentProjector(tuple(P))
    if P.indices[-1] >= rho.dim:
        raise DimensionMismatch(f"projector indices {P.indices} exceed dimension {rho.dim}")
    idx = list(P.indices)
    block = rho.mat[np.ix_(idx, idx)].copy()
    weight = float(np.trace(block).real)
    if weight <= ZERO_PROB:
        raise ZeroWeight(f"compression weight {weight:.3e} <= {ZERO_PROB:.0e}")
    return block, weight


def compose(first, second):
    """Instrument for applying ``first`` then ``second``: Kraus ``K2 @ K1``."""
    first, second = _as_instrument(first), _as_instrument(second)
    return instrument([K2.mat @ K1.mat for K1 in first.kraus for K2 in second.kraus])


def complete(ins):
    """Append one diagonal Kraus so that ``sum K^dagger K = I`` exactly.

    The effect of an SIO instrument is diagonal, so the completion is
    ``diag(sqrt(1 - s))`` and stays strictly incoherent.
    """
    ins = _as_instrument(ins)
    s = np.clip(ins.effect().diagonal().real, 0.0, 1.0)
    extra = np.diag(np.sqrt(1.0 - s)).astype(np.complex128)
    return instrument(list(ins.kraus) + [extra])


def random_kraus_profile(d, rng):
    perm = rng.permutation(d)
    mags = rng.uniform(0.0, 1.0, d)
    phases = rng.uniform(0.0, 2.0 * np.pi, d)
    return linalg.permutation_matrix(perm) @ np.diag(mags * np.exp(1j * phases))


def random_instrument(d, n_kraus, seed=None, headroom=1e-6):
    """Random sub-normalized instrument with ``lambda_max(sum K^dagger K) = 1 - headroom``."""
    if n_kraus < 1:
        raise InvalidDimension(f"n_kraus must be at least 1, got {n_kraus}")
    rng = states._generator(seed)
    mats = [random_kraus_profile(d, rng) for _ in range(n_kraus)]
    # the effect of a permutation-times-diagonal operator is diagonal
    top = float(np.max(sum(np.abs(M) ** 2 for M in mats).sum(axis=0)))
    scale = np.sqrt((1.0 - headroom) / top)
    return instrument([scale * M for M in mats])
