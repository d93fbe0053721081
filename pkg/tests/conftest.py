import numpy as np
import pytest

from edchrom.isotherm import IsothermModel

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240316)


@pytest.fixture
def model_n1():
    """Single-component Langmuir model used by the worked examples."""
    return IsothermModel(a=[4.0], b=[4.0], porosity=0.5, nu=1.0)


@pytest.fixture
def model_exp1():
    """Three-component displacement model (a=(4,5,6), b=(4,5,1), eps=0.5)."""
    return IsothermModel(a=[4.0, 5.0, 6.0], b=[4.0, 5.0, 1.0], porosity=0.5, nu=1.0)


def make_model(n, nu, rng=None, porosity=0.5):
    """Random admissible model with distinct eta; deterministic without rng."""
    if rng is None:
        a = 3.0 + np.arange(n, dtype=float)
        b = np.linspace(1.0, 4.0, n)
    else:
        a = np.sort(rng.uniform(1.0, 8.0, n))
        while np.any(np.diff(a) < 1e-3):
            a = np.sort(rng.uniform(1.0, 8.0, n))
        b = rng.uniform(0.5, 5.0, n)
    return IsothermModel(a=a, b=b, porosity=porosity, nu=nu)
