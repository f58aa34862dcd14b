import numpy as np
import pytest

from cohfilt import measures, states, transform
from cohfilt.errors import DimensionMismatch, DimensionTooLarge, InvalidRank
from conftest import RHO1


def test_lex_subsets_order():
    assert list(transform.lex_subsets(3)) == [(0,), (0, 1), (0, 1, 2), (0, 2), (1,), (1, 2), (2,)]
    assert sum(1 for _ in transform.lex_subsets(6)) == 2**6 - 1


def test_pure_to_pure_examples():
    psi3 = states.mcs(3)
    two = states.pure_state([0.6, 0.8, 0])
    v = transform.pure_to_pure(psi3, two)
    assert v.possible and v.reason is transform.Reason.RANK_SUFFICIENT and v.witness is None
    v = transform.pure_to_pure(two, psi3)
    assert not v.possible and v.reason is transform.Reason.RANK_DEFICIENT
    assert transform.pure_to_pure(two, two).possible
    with pytest.raises(DimensionMismatch):
        transform.pure_to_pure(states.mcs(2), psi3)


def test_pure_reachable_examples(rho1, rho2):
    v = transform.pure_reachable(rho1, 2)
    assert not v.possible and v.witness is None and v.reason is transform.Reason.NO_PURE_COMPRESSION
    v = transform.pure_reachable(rho2, 2)
    assert v.possible and v.witness.indices == (0, 1)
    for seed in range(20):
        rho = states.random_density(4, seed=seed)
        v = transform.pure_reachable(rho, 1)
        assert v.possible and len(v.witness.indices) == 1


def test_rho1_enumeration_is_exhaustive(rho1):
    recs = list(transform.enumerate_compressions(rho1))
    assert len(recs) == 7
    for r in recs:
        assert (not r.rank_one) or r.coherence_rank == 1
    # every 2x2 block (1/15)[[5,4],[4,5]] has eigenvalues 1/15 and 9/15
    for r in recs:
        if len(r.indices) == 2:
            assert r.second_eigenvalue == pytest.approx((1 / 15) / (10 / 15))


def test_counterexample_check(rho1, rho2):
    assert transform.counterexample_check()
    assert measures.c_m(rho1) == pytest.approx(0.5333, abs=5e-5)
    assert measures.c_m(rho2) == pytest.approx(0.3333, abs=5e-5)
    assert np.linalg.matrix_rank(rho2.mat) == 1


def test_guards(rho1):
    with pytest.raises(InvalidRank):
        transform.pure_reachable(rho1, 4)
    with pytest.raises(DimensionTooLarge):
        transform.pure_reachable(np.eye(21) / 21, 1)


def test_pure_reachable_monotone_in_target():
    rng = np.random.default_rng(0)
    for _ in range(40):
        d = int(rng.integers(2, 5))
        if rng.random() < 0.5:
            support = rng.choice(d, size=int(rng.integers(1, d + 1)), replace=False)
            pure = states.pure_density(states.random_pure(d, seed=rng, support=support))
            rho = states.validate_density(0.7 * pure.mat + 0.3 * np.diag(rng.dirichlet(np.ones(d))))
        else:
            rho = states.random_density(d, int(rng.integers(1, d + 1)), rng)
        verdicts = [transform.pure_reachable(rho, r).possible for r in range(1, d + 1)]
        for lo, hi in zip(verdicts, verdicts[1:]):
            assert lo or not hi


def test_pure_state_consistency():
    rng = np.random.default_rng(1)
    for _ in range(200):
        d = int(rng.integers(2, 6))
        phis = [
            states.random_pure(d, seed=rng, support=rng.choice(d, size=int(rng.integers(1, d + 1)), replace=False))
            for _ in range(2)
        ]
        ranks = [states.coherence_rank(p) for p in phis]
        assert transform.pure_to_pure(*phis).possible == (ranks[0] >= ranks[1])
        # pure target reachable from the first state's density exactly when ranks allow it
        assert transform.pure_reachable(states.pure_density(phis[0]), ranks[1]).possible == (ranks[0] >= ranks[1])


def test_mixed_condition_is_necessary():
    from cohfilt import sio
    rng = np.random.default_rng(2)
    for _ in range(200):
        d = int(rng.integers(2, 5))
        rho = states.random_density(d, int(rng.integers(1, d + 1)), rng)
        out, _ = sio.apply_instrument(rho, sio.random_instrument(d, int(rng.integers(1, 5)), rng))
        assert measures.c_m(out) <= measures.c_m(rho) + 1e-9


def test_rho1_matrix_is_reference_state(rho1):
    np.testing.assert_allclose(transform.reference_states()[0].mat, RHO1)
