import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import mcde


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels before any test that measures time."""
    ds = mcde.generate(mcde.DependencySpec("linear", 64, 3, 0.1, seed=1))
    mcde.contrast(ds, m=4, seed=0)
    mcde.contrast(mcde.discretise(ds, 3), m=4, seed=0)


@pytest.fixture
def numpy_backend(monkeypatch):
    """Force the pure-numpy kernels for the duration of one test."""
    from mcde import _kernels

    monkeypatch.setattr(_kernels, "rank_scan", _kernels.rank_scan_numpy)
    monkeypatch.setattr(_kernels, "mask_outside", _kernels.mask_outside_numpy)
    monkeypatch.setattr(_kernels, "window_stats", _kernels.window_stats_numpy)
    return _kernels


def random_tied_column(rng: np.random.Generator, n: int) -> np.ndarray:
    """A column with a controllable amount of exact duplicates."""
    distinct = rng.integers(1, n + 1)
    levels = rng.random(distinct)
    return levels[rng.integers(0, distinct, size=n)]
