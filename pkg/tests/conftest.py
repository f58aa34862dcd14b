import numpy as np
import pytest

from cohfilt import _pykernels, states

try:
    from cohfilt import _kernels
except ImportError:
    _kernels = None

RHO1 = np.array([[5, 4, 4], [4, 5, 4], [4, 4, 5]], dtype=complex) / 15
RHO2 = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 0]], dtype=complex) / 2
PLUS = np.array([[1, 1], [1, 1]], dtype=complex) / 2


@pytest.fixture
def rho1():
    return states.validate_density(RHO1)


@pytest.fixture
def rho2():
    return states.validate_density(RHO2)


@pytest.fixture
def plus():
    return states.validate_density(PLUS)


KERNEL_MODULES = [pytest.param(_pykernels, id="python")]
if _kernels is not None:
    KERNEL_MODULES.append(pytest.param(_kernels, id="cython"))


@pytest.fixture(params=KERNEL_MODULES)
def kernels(request):
    return request.param


def random_hermitian(rng, d):
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (G + G.conj().T) / 2


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""
    def record(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
