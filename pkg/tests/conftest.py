import numpy as np
import pytest

from fourier_dunkl import dunkl, measure


@pytest.fixture(scope="session")
def systems():
    """Cache of DunklSystem instances keyed by (alpha, n_max)."""
    cache = {}

    def get(alpha, n_max):
        key = (float(alpha), int(n_max))
        if key not in cache:
            cache[key] = dunkl.DunklSystem.build(alpha, n_max)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def rules():
    """Cache of quadrature rules keyed by (alpha, order)."""
    cache = {}

    def get(alpha, order):
        key = (float(alpha), int(order))
        if key not in cache:
            cache[key] = measure.build_rule(alpha, order)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
