"""Deterministic seed derivation for replicated experiments.

Replicate r of an experiment with master seed s draws from
``spawn_seedseq(s, r)``.  numpy's SeedSequence mixes (entropy, spawn_key)
with a cryptographic-quality hash, so replicates are independent streams
and results do not depend on execution order or worker count.
"""
from __future__ import annotations

import numpy as np


def spawn_seedseq(master_seed: int, *key: int) -> np.random.SeedSequence:
    """Seed sequence for the stream identified by ``key`` under ``master_seed``."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))


def rng_from(seed) -> np.random.Generator:
    """Generator from an int seed or an existing SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed)))
