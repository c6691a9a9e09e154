import numpy as np
import pytest

from bnsd import WAmplitudes


def random_amps(rng, real=False):
    v = rng.normal(size=3)
    if not real:
        v = v + 1j * rng.normal(size=3)
    return WAmplitudes.normalized(*v)


def random_density(rng, dim=8, rank=None):
    """Ginibre-distributed density matrix."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def standard_w():
    return WAmplitudes.standard()
