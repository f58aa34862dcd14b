"""State convertibility under stochastic SIO."""
import enum
from dataclasses import dataclass, field

import numpy as np

from cohfilt import linalg, measures, sio, states
from cohfilt.errors import DimensionMismatch, DimensionTooLarge, InvalidRank, ZeroWeight

RANK_TOL = 1e-10
MAX_ENUM_DIM = 20


class Reason(str, enum.Enum):
    RANK_SUFFICIENT = "RankSufficient"
    RANK_DEFICIENT = "RankDeficient"
    NO_PURE_COMPRESSION = "NoPureCompression"


@dataclass(frozen=True)
class ConvertibilityVerdict:
    possible: bool
    reason: Reason
    witness: sio.IncoherentProjector = None


@dataclass(frozen=True)
class CompressionRecord:
    indices: tuple
    weight: float
    rank_one: bool
    coherence_rank: int
    second_eigenvalue: float = field(default=0.0)


def pure_to_pure(phi1, phi2, zero_tol=states.ZERO_TOL):
    """Decide ``phi1 -> phi2`` by comparing coherence ranks."""
    if not isinstance(phi1, states.PureState):
        phi1 = states.pure_state(phi1)
    if not isinstance(phi2, states.PureState):
        phi2 = states.pure_state(phi2)
    if phi1.dim != phi2.dim:
        raise DimensionMismatch(f"dimensions {phi1.dim} and {phi2.dim} differ")
    ok = states.coherence_rank(phi1, zero_tol) >= states.coherence_rank(phi2, zero_tol)
    return ConvertibilityVerdict(ok, Reason.RANK_SUFFICIENT if ok else Reason.RANK_DEFICIENT)


def lex_subsets(d):
    """Nonempty subsets of ``range(d)`` as sorted tuples, in lexicographic order."""
    def walk(prefix, start):
        for i in range(start, d):
            cur = prefix + (i,)
            yield cur
            yield from walk(cur, i + 1)
    return walk((), 0)


def inspect_compression(rho, indices, rank_tol=RANK_TOL, zero_tol=states.ZERO_TOL):
    """Rank-one test and coherence rank of one incoherent-projector compression.

    Returns None when the compression has zero weight.
    """
    try:
        block, weight = sio.projector_compress(rho, sio.IncoherentProjector(indices))
    except ZeroWeight:
        return None
    w = linalg.eigvalsh(block / weight)
    second = float(w[-2]) if w.size > 1 else 0.0
    rank_one = second <= rank_tol
    crank = int(np.count_nonzero(block.diagonal().real / weight > zero_tol))
    return CompressionRecord(tuple(indices), weight, rank_one, crank, second)


def enumerate_compressions(rho, rank_tol=RANK_TOL, zero_tol=states.ZERO_TOL):
    rho = states.density(rho)
    if rho.dim > MAX_ENUM_DIM:
        raise DimensionTooLarge(f"subset enumeration capped at d = {MAX_ENUM_DIM}, got {rho.dim}")
    for S in lex_subsets(rho.dim):
        rec = inspect_compression(rho, S, rank_tol, zero_tol)
        if rec is not None:
            yield rec


def pure_reachable(rho, r_target, rank_tol=RANK_TOL, zero_tol=states.ZERO_TOL):
    """Can stochastic SIO turn ``rho`` into a pure state of coherence rank ``r_target``?

    True iff some incoherent projector compresses ``rho`` to a rank-one
    matrix with at least ``r_target`` nonzero diagonal entries. The witness is
    the lexicographically first such index set.
    """
    rho = states.density(rho)
    if rho.dim > MAX_ENUM_DIM:
        raise DimensionTooLarge(f"subset enumeration capped at d = {MAX_ENUM_DIM}, got {rho.dim}")
    if not 1 <= r_target <= rho.dim:
        raise InvalidRank(f"target coherence rank must lie in [1, {rho.dim}], got {r_target}")
    for rec in enumerate_compressions(rho, rank_tol, zero_tol):
        if rec.rank_one and rec.coherence_rank >= r_target:
            return ConvertibilityVerdict(True, Reason.RANK_SUFFICIENT, sio.IncoherentProjector(rec.indices))
    return ConvertibilityVerdict(False, Reason.NO_PURE_COMPRESSION)


def reference_states():
    """The two qutrit states used to show that ``C_m`` ordering is not sufficient."""
    rho1 = np.array([[5, 4, 4], [4, 5, 4], [4, 4, 5]], dtype=np.complex128) / 15.0
    rho2 = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 0]], dtype=np.complex128) / 2.0
    return states.validate_density(rho1), states.validate_density(rho2)


def counterexample_check():
    """``c_m(rho1) > c_m(rho2)`` yet ``rho1`` reaches no coherence-rank-2 pure state."""
    rho1, rho2 = reference_states()
    return bool(measures.c_m(rho1) > measures.c_m(rho2) and not pure_reachable(rho1, 2).possible)
