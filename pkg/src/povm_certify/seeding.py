"""Deterministic seed derivation for trial fan-out.

All randomness in the package flows from one 64-bit master seed. Each trial
gets its own ``numpy`` generator seeded with ``derive_seed(master, index)``
so results do not depend on execution order or thread count.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
# splitmix64 constants (Steele/Lea/Flood finalizer)
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def derive_seed(master: int, trial_index: int) -> int:
    """splitmix64 stream value ``trial_index + 1`` of the ``master`` stream.

    The pre-mix map index -> master + (index+1)*GAMMA is injective mod 2^64
    (GAMMA is odd), so distinct trial indices never collide for a fixed
    master seed.
    """
    z = (int(master) + (int(trial_index) + 1) * _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def trial_rng(master: int, trial_index: int) -> np.random.Generator:
    return rng_from_seed(derive_seed(master, trial_index))
