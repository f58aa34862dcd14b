"""Delta-robustness of coherence and the filtration measure ``C_m``."""
from dataclasses import asdict, dataclass

from cohfilt import filtration, linalg, states
from cohfilt.errors import InfeasibleAtUpperBound

MEASURE_TOL = 1e-9
BISECT_TOL = 1e-8
# positivity slack inside the bisection; tight so the bracket is not biased
FEASIBILITY_TOL = 1e-13
EXTREMAL_TOL = 1e-10


@dataclass(frozen=True)
class MeasureReport:
    c_s: float
    c_m: float
    robustness: float
    robustness_bisect: float
    is_incoherent: bool
    is_max_extremal: bool
    dim: int

    def to_dict(self):
        return asdict(self)


def delta_robustness(rho, zero_tol=states.ZERO_TOL):
    """``min{lam : rho <= lam * Delta(rho)}``, evaluated as ``lambda_max`` of the filtration matrix."""
    rho = states.density(rho)
    return rho.dim * filtration.max_fidelity(rho, zero_tol)


def delta_robustness_bisection(rho, tol=BISECT_TOL, psd_tol=FEASIBILITY_TOL):
    """Same quantity straight from the operator inequality, by bisection on [1, d]."""
    rho = states.density(rho)
    M = rho.mat
    delta = states.dephased_matrix(rho)
    d = rho.dim

    def feasible(lam):
        return linalg.is_psd(lam * delta - M, tol=psd_tol)

    if not feasible(d + tol):
        raise InfeasibleAtUpperBound(f"rho <= lam * Delta(rho) fails at lam = {d} + {tol:g}")
    if feasible(1.0):
        return 1.0
    lo, hi = 1.0, float(d) + tol
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def c_s(rho, zero_tol=states.ZERO_TOL):
    return filtration.max_fidelity(rho, zero_tol)


def c_m(rho, zero_tol=states.ZERO_TOL):
    """Maximal filtration fidelity minus ``1/d``; zero exactly on incoherent states."""
    rho = states.density(rho)
    value = filtration.max_fidelity(rho, zero_tol) - 1.0 / rho.dim
    return max(value, 0.0) if value > -1e-12 else value


def report(rho, zero_tol=states.ZERO_TOL, bisect_tol=BISECT_TOL, incoherent_tol=states.STATE_TOL):
    rho = states.density(rho)
    lam = filtration.top_eigenpair(rho, zero_tol).value
    d = rho.dim
    fid = filtration._clamp_fidelity(lam / d, d)
    return MeasureReport(
        c_s=fid,
        c_m=max(fid - 1.0 / d, 0.0),
        robustness=d * fid,
        robustness_bisect=delta_robustness_bisection(rho, bisect_tol),
        is_incoherent=states.is_incoherent(rho, incoherent_tol),
        is_max_extremal=bool(fid >= 1.0 - EXTREMAL_TOL),
        dim=d,
    )


def is_faithfully_zero(rho, measure_tol=MEASURE_TOL):
    return c_m(rho) <= measure_tol
