"""Permutation plans and the order-preserving replicate runner."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, List, TypeVar

from src.data.rng import RngPolicy
from src.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_PERMUTATIONS = 1000

T = TypeVar("T")


class PermutationMode(str, Enum):
    """How relabelings are chosen; only uniform random draws are supported."""

    RANDOM = "random"


@dataclass(frozen=True)
class PermutationPlan:
    """
    Relabeling plan for one permutation test.

    Args:
        b_perms: Number of random relabelings B
        rng: Seed policy; replicate k draws from ``rng.stream(k)``
        mode: Relabeling scheme
        smoothed: Also report the (1 + #{perm >= observed}) / (B + 1) p-value
        workers: Threads used to run replicates (never changes the result)
    """

    b_perms: int = DEFAULT_PERMUTATIONS
    rng: RngPolicy = field(default_factory=lambda: RngPolicy(0))
    mode: PermutationMode = PermutationMode.RANDOM
    smoothed: bool = False
    workers: int = 1

    def __post_init__(self):
        if int(self.b_perms) < 1:
            raise ConfigError(f"b_perms must be at least 1, got {self.b_perms}")
        if int(self.workers) < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        object.__setattr__(self, "mode", PermutationMode(self.mode))

    @property
    def seed(self) -> int:
        return self.rng.master_seed


def map_ordered(task: Callable[[int], T], indices: Iterable[int], workers: int = 1) -> List[T]:
    """
    Apply ``task`` to every index and return results in index order.

    With ``workers > 1`` tasks run on a thread pool; the first exception raised
    by any task propagates to the caller.
    """
    indices = list(indices)
    if workers <= 1 or len(indices) <= 1:
        return [task(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(task, indices))
