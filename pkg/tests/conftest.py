import numpy as np
import pytest

from blockdet import BlockMatrix, partition


def random_complex(rng, rows, cols=None):
    """Complex entries uniform in the unit square."""
    cols = rows if cols is None else cols
    return rng.uniform(-1, 1, (rows, cols)) + 1j * rng.uniform(-1, 1, (rows, cols))


def random_block(rng, N, n) -> BlockMatrix:
    return partition(random_complex(rng, N * n), N, n)


def well_conditioned(rng, n, max_cond=1e3):
    """Resample until the 2-norm condition number is bounded."""
    for _ in range(100):
        m = random_complex(rng, n)
        if np.linalg.cond(m) <= max_cond:
            return m
    raise AssertionError("could not draw a well-conditioned matrix")


@pytest.fixture
def rng():
    return np.random.default_rng(20250823)
