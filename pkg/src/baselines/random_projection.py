"""Random-projection Hotelling test: project to k dimensions, then run T^2."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.baselines.hotelling import HotellingResult, hotelling_t2
from src.data.rng import RngPolicy
from src.data.samples import SamplePair
from src.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RPConfig:
    """
    Random-projection settings.

    Args:
        k: Projected dimension; None means floor(min(m, n) / 2)
        rng: Seed policy; the projection matrix is drawn from ``rng.stream(0)``
        projection: Fixed k x d matrix used instead of a random draw
    """

    k: Optional[int] = None
    rng: RngPolicy = field(default_factory=lambda: RngPolicy(0))
    projection: Optional[np.ndarray] = None

    def resolve_k(self, sp: SamplePair) -> int:
        if self.projection is not None:
            k = np.asarray(self.projection).shape[0]
        else:
            k = self.k if self.k is not None else min(sp.m, sp.n) // 2
        if not 1 <= k <= sp.total - 2:
            raise ConfigError(f"projected dimension k={k} must satisfy 1 <= k <= N - 2 = {sp.total - 2}")
        return k

    def projection_matrix(self, sp: SamplePair) -> np.ndarray:
        """The k x d projection P_k (iid standard normal unless fixed)."""
        k = self.resolve_k(sp)
        if self.projection is not None:
            matrix = np.asarray(self.projection, dtype=float)
            if matrix.shape != (k, sp.d):
                raise ConfigError(f"projection must be k x d = {k} x {sp.d}, got {matrix.shape}")
            return matrix
        return self.rng.stream(0).standard_normal((k, sp.d))


def rp_test(sp: SamplePair, cfg: Optional[RPConfig] = None) -> HotellingResult:
    """
    Map every observation x to P_k x and run Hotelling's T^2 in k dimensions.

    Raises:
        ConfigError: If k is outside [1, N - 2]
        SingularCovariance: If the projected pooled covariance is singular (not retried)
    """
    cfg = cfg or RPConfig()
    projection = cfg.projection_matrix(sp)
    projected = SamplePair(sp.x_rows @ projection.T, sp.y_rows @ projection.T, sp.label_x, sp.label_y)
    logger.debug(f"Random projection to k={projection.shape[0]} dimensions (seed {cfg.rng.master_seed})")
    return hotelling_t2(projected, method="rp", seed=cfg.rng.master_seed)
