"""Seed derivation for reproducible, order-independent randomness.

Monte Carlo iterations must give the same result no matter how they are
scheduled, so every iteration owns a counter-based Philox stream keyed by
``(master seed, iteration index)`` instead of sharing one sequential
generator.  Larger units of work (benchmark repetitions, stream windows)
derive child seeds through ``SeedSequence`` with an explicit integer path.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def iteration_rng(seed: int, iteration: int) -> np.random.Generator:
    """Independent generator for one Monte Carlo iteration."""
    key = np.array([seed & _MASK64, iteration], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def derive_seed(seed: int, *path: int) -> int:
    """Stable child seed for the sub-stream identified by ``path``."""
    ss = np.random.SeedSequence([int(seed)] + [int(p) for p in path])
    return int(ss.generate_state(1, np.uint64)[0])
