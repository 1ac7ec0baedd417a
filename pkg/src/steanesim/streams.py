"""Deterministic random streams derived from one master seed.

Trials are grouped in fixed blocks of :data:`TRIALS_PER_STREAM`.  Each block
owns one stream per purpose, derived from ``(seed, block, purpose)``, and its
trials draw from it in order.  Results therefore do not depend on how blocks
are spread over threads, and raising the trial count only appends trials
without touching existing ones.
"""

from __future__ import annotations

import numpy as np

from .kernels.rng import next_double

FAULTS = 0
MEASUREMENTS = 1
TRIALS_PER_STREAM = 256


class KernelRandom:
    """Uniform source whose whole state is a ``uint64[4]`` array.

    ``state`` is what the compiled kernels take; ``random()`` draws from the
    same stream on the Python side, so both can share one source.
    """

    def __init__(self, state: np.ndarray):
        state = np.asarray(state, dtype=np.uint64)
        if state.shape != (4,) or not state.any():
            raise ValueError("state must be four uint64 words, not all zero")
        self.state = state.copy()

    @classmethod
    def from_seed(cls, seed: int | np.random.SeedSequence | None = None) -> KernelRandom:
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        state = ss.generate_state(4, np.uint64)
        if not state.any():  # pragma: no cover - probability 2**-256
            state[0] = 1
        return cls(state)

    def random(self) -> float:
        return next_double(self.state)


def as_kernel_random(rng) -> KernelRandom:
    """Coerce ``None``, an int seed, a ``SeedSequence`` or a numpy ``Generator``."""
    if isinstance(rng, KernelRandom):
        return rng
    if isinstance(rng, np.random.Generator):
        return KernelRandom(rng.integers(1, 2**63, size=4, dtype=np.uint64))
    return KernelRandom.from_seed(rng)


def block_rng(seed: int, block: int, purpose: int = FAULTS) -> KernelRandom:
    return KernelRandom.from_seed(np.random.SeedSequence(seed, spawn_key=(block, purpose)))


def trial_blocks(trials: int) -> list[tuple[int, int, int]]:
    """``(block, first trial, stop)`` for every block covering ``range(trials)``."""
    return [(b, lo, min(lo + TRIALS_PER_STREAM, trials))
            for b, lo in enumerate(range(0, trials, TRIALS_PER_STREAM))]
