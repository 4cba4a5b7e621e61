"""Reproducible random streams: one counter-based Philox generator per (master seed, trial)."""

import numpy as np


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Stream of `trial` under `master_seed`; independent of the order in which trials run."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=(trial,))))


def stream_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Stream keyed by an arbitrary integer path, e.g. (n, trial) or (b, n, trial)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=tuple(key))))
