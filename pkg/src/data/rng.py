"""Seed policy: independent, reproducible random streams per task.

Every random draw in the package comes from a stream obtained through
:class:`RngPolicy`. A stream is keyed by ``(master_seed, *prefix, task_index)``
through numpy's ``SeedSequence`` spawn keys, so the values a task sees do not
depend on which worker runs it or in what order tasks are scheduled.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.errors import ConfigError

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class RngPolicy:
    """Master seed plus a spawn-key path identifying a family of substreams."""

    master_seed: int
    prefix: Tuple[int, ...] = ()

    def __post_init__(self):
        seed = int(self.master_seed)
        if not 0 <= seed <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if any(int(k) < 0 for k in self.prefix):
            raise ConfigError("stream keys must be non-negative")
        object.__setattr__(self, "master_seed", seed)
        object.__setattr__(self, "prefix", tuple(int(k) for k in self.prefix))

    def seed_sequence(self, task_index: int) -> np.random.SeedSequence:
        if task_index < 0:
            raise ConfigError(f"task index must be non-negative, got {task_index}")
        return np.random.SeedSequence(self.master_seed, spawn_key=self.prefix + (int(task_index),))

    def stream(self, task_index: int) -> np.random.Generator:
        """Generator for one task; identical inputs give identical value streams."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence(task_index)))

    def child(self, index: int) -> "RngPolicy":
        """Policy for a nested family of tasks (e.g. the replicates inside one Monte Carlo rep)."""
        if index < 0:
            raise ConfigError(f"child index must be non-negative, got {index}")
        return RngPolicy(self.master_seed, self.prefix + (int(index),))
