"""Randomized invariant battery behind ``cohfilt suite``.

Each check returns a :class:`PropertyResult`. ``worst_margin`` is the
smallest slack ``allowed - observed`` seen over all trials; a check passes
when it never goes negative.
"""
import itertools
from dataclasses import asdict, dataclass

import numpy as np

from cohfilt import filtration, measures, oracle, sio, states

SLACK = 1e-9
DROP_PROB = 1e-12


@dataclass
class PropertyResult:
    name: str
    passed: bool
    trials: int
    worst_margin: float

    def to_dict(self):
        return asdict(self)


class _Tracker:
    def __init__(self, name):
        self.name = name
        self.trials = 0
        self.worst = np.inf

    def add(self, margin):
        self.trials += 1
        self.worst = min(self.worst, float(margin))

    def result(self):
        worst = self.worst if self.trials else 0.0
        return PropertyResult(self.name, bool(worst >= 0.0), self.trials, worst)


def rng_for(seed, stream):
    return np.random.default_rng([seed, stream])


def battery_state(d, rng, kind):
    """One random state of the requested kind: full, deficient, padded or diagonal."""
    if kind == "full" or d == 1:
        return states.random_density(d, d, rng)
    if kind == "deficient":
        return states.random_density(d, int(rng.integers(1, d)), rng)
    if kind == "padded":
        inner = int(rng.integers(1, d))
        idx = sorted(rng.choice(d, size=inner, replace=False).tolist())
        sub = states.random_density(inner, int(rng.integers(1, inner + 1)), rng)
        return states.embed(sub, idx, d)
    if kind == "diagonal":
        return states.validate_density(np.diag(rng.dirichlet(np.ones(d))))
    raise ValueError(f"unknown state kind {kind!r}")


BATTERY_KINDS = ("full", "deficient", "padded")


def state_battery(d, n, seed, kinds=BATTERY_KINDS):
    """``n`` states cycling through ``kinds``; deterministic in ``(d, n, seed)``."""
    rng = rng_for(seed, 0)
    return [battery_state(d, rng, kinds[i % len(kinds)]) for i in range(n)]


def check_bounds(batch):
    t = _Tracker("fidelity_bounds")
    for rho in batch:
        d = rho.dim
        f = filtration.max_fidelity(rho)
        t.add(min(f - (1.0 / d - 1e-12), (1.0 + 1e-12) - f))
    return t.result()


def check_achievability(batch):
    t = _Tracker("achievability")
    for rho in batch:
        res = filtration.filtrate(rho, check_tol=np.inf)
        t.add(SLACK - abs(res.achieved_fidelity - res.lambda_max / rho.dim))
    return t.result()


def check_two_routes(batch, tol=1e-7):
    t = _Tracker("robustness_two_routes")
    for rho in batch:
        t.add(tol - abs(measures.delta_robustness(rho) - measures.delta_robustness_bisection(rho)))
    return t.result()


def check_oracle_dominance(batch, samples, seed):
    t = _Tracker("oracle_dominance")
    for i, rho in enumerate(batch):
        best = oracle.random_search_fidelity(rho, samples, seed=seed + i).best_fidelity
        t.add(filtration.max_fidelity(rho) + SLACK - best)
    return t.result()


def check_multi_kraus(batch, trials, seed):
    t = _Tracker("multi_kraus_reduction")
    rng = rng_for(seed, 1)
    for k in range(trials):
        rho = batch[k % len(batch)]
        ins = sio.random_instrument(rho.dim, int(rng.integers(1, 5)), rng)
        try:
            f = filtration.instrument_fidelity(rho, ins)
        except sio.ZeroProbability:
            continue
        t.add(filtration.max_fidelity(rho) + SLACK - f)
    return t.result()


def check_monotonicity(batch, trials, seed):
    t = _Tracker("sSIO_monotonicity")
    rng = rng_for(seed, 2)
    for k in range(trials):
        rho = batch[k % len(batch)]
        ins = sio.random_instrument(rho.dim, int(rng.integers(1, 5)), rng)
        try:
            out, _ = sio.apply_instrument(rho, ins)
        except sio.ZeroProbability:
            continue
        t.add(filtration.max_fidelity(rho) + SLACK - filtration.max_fidelity(out))
    return t.result()


def check_c1(batch, seed, n_diagonal=100):
    """Non-negativity on the batch, exact zero on diagonal states, faithfulness."""
    t = _Tracker("C1_faithfulness")
    d = batch[0].dim
    for rho in batch:
        cm = measures.c_m(rho)
        t.add(cm + 1e-12)
        if cm <= measures.MEASURE_TOL:
            t.add(1e-5 - states.max_offdiagonal(rho))
    rng = rng_for(seed, 3)
    for _ in range(n_diagonal):
        rho = battery_state(d, rng, "diagonal")
        t.add(1e-12 - measures.c_m(rho))
    return t.result()


def outcome_terms(rho, kraus_groups):
    """``(P_k, c_m(state_k))`` for each group of Kraus operators, dropping P_k <= 1e-12."""
    terms = []
    for group in kraus_groups:
        out = sio.unnormalized_output(rho, sio.instrument(group))
        p = float(np.trace(out).real)
        if p <= DROP_PROB:
            continue
        terms.append((p, measures.c_m(states.validate_density(out / p))))
    return terms


def random_tp_instrument(d, rng):
    return sio.complete(sio.random_instrument(d, int(rng.integers(1, 4)), rng))


def check_c2a(batch, trials, seed):
    t = _Tracker("C2a_monotonicity")
    rng = rng_for(seed, 4)
    for k in range(trials):
        rho = batch[k % len(batch)]
        ins = random_tp_instrument(rho.dim, rng)
        out, _ = sio.apply_instrument(rho, ins)
        t.add(measures.c_m(rho) + SLACK - measures.c_m(out))
    return t.result()


def check_c2b(batch, trials, seed):
    """Strong monotonicity for singleton splits and one random coarse split per trial."""
    t = _Tracker("C2b_strong_monotonicity")
    rng = rng_for(seed, 5)
    for k in range(trials):
        rho = batch[k % len(batch)]
        ins = random_tp_instrument(rho.dim, rng)
        ks = list(ins.kraus)
        base = measures.c_m(rho)
        singles = [[K] for K in ks]
        t.add(base + SLACK - sum(p * c for p, c in outcome_terms(rho, singles)))
        labels = rng.integers(0, 2, len(ks))
        coarse = [[K for K, lab in zip(ks, labels) if lab == g] for g in (0, 1)]
        coarse = [g for g in coarse if g]
        t.add(base + SLACK - sum(p * c for p, c in outcome_terms(rho, coarse)))
    return t.result()


def check_c3(batch, trials, seed):
    t = _Tracker("C3_convexity")
    rng = rng_for(seed, 6)
    weights = np.round(np.arange(1, 10) / 10.0, 1)
    n = len(batch)
    for k in range(trials):
        r1, r2 = batch[k % n], batch[int(rng.integers(0, n))]
        p = float(weights[k % weights.size])
        mix = states.validate_density(p * r1.mat + (1 - p) * r2.mat)
        t.add(p * measures.c_m(r1) + (1 - p) * measures.c_m(r2) + SLACK - measures.c_m(mix))
    return t.result()


def check_coherent_gap(batch):
    """``lambda_max >= 1 + |rho_ij| / sqrt(rho_ii rho_jj)`` for every coherent pair, and c_m > 0."""
    t = _Tracker("coherent_strict_gap")
    for rho in batch:
        M = rho.mat
        lam = filtration.top_eigenpair(rho).value
        cm = measures.c_m(rho)
        for i, j in itertools.combinations(range(rho.dim), 2):
            if abs(M[i, j]) > 1e-6:
                bound = 1.0 + abs(M[i, j]) / np.sqrt(M[i, i].real * M[j, j].real)
                t.add(min(lam - bound + SLACK, cm))
    return t.result()


def check_invariances(batch, seed):
    t = _Tracker("permutation_and_phase_invariance")
    rng = rng_for(seed, 7)
    for rho in batch:
        d = rho.dim
        f = filtration.max_fidelity(rho)
        perm = rng.permutation(d)
        P = np.eye(d)[perm]
        U = states.diagonal_unitary(rng.uniform(0, 2 * np.pi, d))
        for V in (P, U):
            g = filtration.max_fidelity(states.validate_density(V @ rho.mat @ V.conj().T))
            t.add(1e-10 - abs(f - g))
    return t.result()


def check_qubit_closed_form(batch):
    t = _Tracker("qubit_closed_form")
    for rho in batch:
        p = rho.mat.diagonal().real
        if p.min() <= states.ZERO_TOL:
            continue
        t.add(1e-10 - abs(filtration.qubit_closed_form(rho) - filtration.max_fidelity(rho)))
    return t.result()


def run_suite(d, seed, n_states=200, oracle_samples=2000, instrument_trials=1000, axiom_trials=1000):
    batch = state_battery(d, n_states, seed)
    results = [
        check_bounds(batch),
        check_achievability(batch),
        check_two_routes(batch),
        check_oracle_dominance(batch, oracle_samples, seed),
        check_multi_kraus(batch, instrument_trials, seed),
        check_monotonicity(batch, instrument_trials, seed),
        check_c1(batch, seed),
        check_c2a(batch, axiom_trials, seed),
        check_c2b(batch, axiom_trials, seed),
        check_c3(batch, axiom_trials, seed),
        check_coherent_gap(batch),
        check_invariances(batch, seed),
    ]
    if d == 2:
        results.append(check_qubit_closed_form(batch))
    return results
