import numpy as np
import pytest

from src.qutrit.algebra import operator_basis, state_basis
from src.qutrit.dynamics import TimeGrid
from src.qutrit.pulses import PulseParams


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """A full-rank qutrit density matrix G G† / Tr(G G†) with Gaussian G."""
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def ops():
    return operator_basis()


@pytest.fixture
def states():
    return state_basis()


@pytest.fixture
def params():
    return PulseParams()


@pytest.fixture
def default_grid():
    return TimeGrid()


@pytest.fixture
def coarse_grid():
    """The published window with a quarter of the steps, for tests that only need linearity."""
    return TimeGrid(n_steps=450)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
