import numpy as np
import pytest


def unit_columns(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    """Random matrix with exactly unit-norm columns (test fixture helper)."""
    g = rng.standard_normal((n, p))
    return g / np.sqrt((g * g).sum(axis=0))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
