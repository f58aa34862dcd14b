import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohfilt import filtration, oracle, states
from cohfilt.errors import DegenerateKraus, LengthMismatch, NonPositiveEntry


def test_search_on_plus_state(plus):
    res = oracle.random_search_fidelity(plus, 100_000, seed=0)
    assert 1 - 1e-3 <= res.best_fidelity <= 1 + 1e-9
    assert res.samples == 100_000 and res.seed == 0


def test_search_on_incoherent_state():
    rho = states.validate_density(np.diag([0.1, 0.2, 0.3, 0.4]))
    rng = np.random.default_rng(0)
    a = rng.standard_normal((1000, 4)) + 1j * rng.standard_normal((1000, 4))
    from cohfilt import _backend
    np.testing.assert_allclose(_backend.diag_kraus_fidelities(rho.mat, a), 0.25, atol=1e-15)
    assert oracle.random_search_fidelity(rho, 5000, seed=1).best_fidelity == pytest.approx(0.25, abs=1e-15)


def test_search_on_rho1(rho1):
    res = oracle.random_search_fidelity(rho1, 100_000, seed=42)
    assert 13 / 15 - 5e-3 <= res.best_fidelity <= 13 / 15 + 1e-9


def test_search_deterministic_and_worker_independent(rho1):
    a = oracle.random_search_fidelity(rho1, 30_000, seed=5)
    b = oracle.random_search_fidelity(rho1, 30_000, seed=5, workers=4)
    assert a.best_fidelity == b.best_fidelity
    np.testing.assert_array_equal(a.best_kraus_diag, b.best_kraus_diag)


def test_best_diag_reproduces_best_fidelity(rho2):
    res = oracle.random_search_fidelity(rho2, 1000, seed=3)
    assert oracle.direct_fidelity(rho2, res.best_kraus_diag) == pytest.approx(res.best_fidelity, abs=1e-12)


def test_ratio_inequality_examples():
    assert oracle.ratio_inequality_check([1, 1], [1, 1])
    assert oracle.ratio_inequality_check([3, 1], [1, 1])
    with pytest.raises(LengthMismatch):
        oracle.ratio_inequality_check([1, 2], [1])
    with pytest.raises(NonPositiveEntry):
        oracle.ratio_inequality_check([1, 0], [1, 1])


positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(positive, positive), min_size=1, max_size=8))
def test_ratio_inequality_property(pairs):
    p, q = zip(*pairs)
    assert oracle.ratio_inequality_check(p, q)


def test_rayleigh_examples(rho2):
    diag = states.validate_density(np.diag([0.2, 0.5, 0.3]))
    assert oracle.rayleigh_fidelity(diag, np.ones(3)) == pytest.approx(1 / 3)
    K = filtration.optimal_kraus(rho2).mat.diagonal()
    assert oracle.rayleigh_fidelity(rho2, K) == pytest.approx(2 / 3, abs=1e-12)
    with pytest.raises(DegenerateKraus):
        oracle.rayleigh_fidelity(rho2, np.array([0, 0, 1.0]))
    with pytest.raises(DegenerateKraus):
        oracle.direct_fidelity(rho2, np.array([0, 0, 1.0]))


def test_two_expressions_agree():
    rng = np.random.default_rng(0)
    for _ in range(500):
        d = int(rng.integers(1, 6))
        rho = states.random_density(d, int(rng.integers(1, d + 1)), rng)
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        assert oracle.direct_fidelity(rho, a) == pytest.approx(oracle.rayleigh_fidelity(rho, a), abs=1e-12)


def test_permutations_do_not_change_search_bound(rho1):
    rng = np.random.default_rng(1)
    for _ in range(10):
        rho = states.random_density(3, seed=rng)
        best = oracle.random_permuted_fidelity(rho, 300, seed=int(rng.integers(1 << 30)))
        assert best <= filtration.max_fidelity(rho) + 1e-9
