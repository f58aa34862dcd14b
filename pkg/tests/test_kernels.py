import numpy as np
import pytest

from cohfilt import _backend, states
from conftest import random_hermitian


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8, 17])
def test_jacobi_residual_and_orthonormality(kernels, d):
    rng = np.random.default_rng(d)
    A = random_hermitian(rng, d)
    w, V, sweeps = kernels.jacobi_eigh(A, 1e-14, 200)
    assert sweeps >= 0
    norm = np.linalg.norm(A)
    assert np.linalg.norm(A @ V - V * w, axis=0).max() <= 1e-11 * max(norm, 1.0)
    assert np.abs(V.conj().T @ V - np.eye(d)).max() < 1e-12
    # trace and Frobenius norm are spectral invariants
    assert w.sum() == pytest.approx(np.trace(A).real, abs=1e-12 * max(norm, 1))
    assert np.sqrt((w**2).sum()) == pytest.approx(norm, rel=1e-12)


def test_jacobi_reports_sweep_cap(kernels):
    rng = np.random.default_rng(3)
    A = random_hermitian(rng, 6)
    _, _, sweeps = kernels.jacobi_eigh(A, 0.0, 2)
    assert sweeps == -1


def test_jacobi_does_not_touch_input(kernels):
    A = np.array([[2, 1j], [-1j, 3]])
    before = A.copy()
    kernels.jacobi_eigh(A, 1e-14, 200)
    np.testing.assert_array_equal(A, before)


def test_jacobi_diagonal_needs_no_rotation(kernels):
    w, V, sweeps = kernels.jacobi_eigh(np.diag([3.0, 1.0, 2.0]).astype(complex), 1e-14, 200)
    assert sweeps == 0
    np.testing.assert_array_equal(w, [3.0, 1.0, 2.0])
    np.testing.assert_array_equal(V, np.eye(3))


def test_backends_agree():
    from cohfilt import _pykernels
    try:
        from cohfilt import _kernels
    except ImportError:
        pytest.skip("extension not built")
    rng = np.random.default_rng(11)
    for d in (2, 4, 7):
        A = random_hermitian(rng, d)
        w1, _, _ = _pykernels.jacobi_eigh(A)
        w2, _, _ = _kernels.jacobi_eigh(A)
        np.testing.assert_allclose(np.sort(w1), np.sort(w2), atol=1e-12)
        rho = states.random_density(d, seed=d).mat
        a = rng.standard_normal((50, d)) + 1j * rng.standard_normal((50, d))
        np.testing.assert_allclose(
            _pykernels.diag_kraus_fidelities(rho, a), _kernels.diag_kraus_fidelities(rho, a), atol=1e-13
        )


def test_diag_kraus_fidelities_matches_explicit_channel(kernels):
    rng = np.random.default_rng(5)
    d = 4
    rho = states.random_density(d, seed=1).mat
    a = rng.standard_normal((20, d)) + 1j * rng.standard_normal((20, d))
    psi = np.full(d, 1 / np.sqrt(d))
    for row, f in zip(a, kernels.diag_kraus_fidelities(rho, a)):
        K = np.diag(row)
        out = K @ rho @ K.conj().T
        assert f == pytest.approx((psi @ out @ psi).real / np.trace(out).real, abs=1e-13)


def test_diag_kraus_fidelities_nan_on_dead_rows(kernels):
    rho = np.diag([1.0, 0.0]).astype(complex)
    f = kernels.diag_kraus_fidelities(rho, np.array([[0.0, 1.0], [1.0, 1.0]], dtype=complex))
    assert np.isnan(f[0])
    assert f[1] == pytest.approx(0.5)


def test_diag_kraus_accepts_readonly(kernels):
    rho = states.random_density(3, seed=0).mat
    assert not rho.flags.writeable
    a = np.ones((2, 3), dtype=complex)
    a.flags.writeable = False
    assert kernels.diag_kraus_fidelities(rho, a).shape == (2,)


def test_fallback_selected_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys\n"
        "class Block:\n"
        "    def find_spec(self, name, path=None, target=None):\n"
        "        if name == 'cohfilt._kernels':\n"
        "            raise ImportError('blocked')\n"
        "sys.meta_path.insert(0, Block())\n"
        "from cohfilt import _backend, transform, measures\n"
        "assert _backend.BACKEND == 'python', _backend.BACKEND\n"
        "rho1, rho2 = transform.reference_states()\n"
        "assert abs(measures.c_m(rho1) - 8 / 15) < 1e-12\n"
        "assert transform.counterexample_check()\n"
    )
    subprocess.run([sys.executable, "-c", code], check=True)
