"""Shared types for Step 1: direction vectors, solver options and scatter matrices."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.data.samples import SamplePair
from src.errors import ConfigError, DegenerateDirection, SingularCovariance

logger = logging.getLogger(__name__)

UNIT_NORM_TOL = 1e-12


class DirectionMethod(str, Enum):
    """Binary linear classifiers whose normal vector serves as the direction."""

    MD = "md"
    FLD = "fld"
    SVM = "svm"
    DWD = "dwd"
    MDP = "mdp"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            for member in cls:
                if member.value == value.strip().lower():
                    return member
        return None

    @property
    def display(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class DirectionVector:
    """Unit normal vector w, oriented so that class X projects above class Y."""

    w: np.ndarray
    method: DirectionMethod

    def __post_init__(self):
        w = np.array(self.w, dtype=float, copy=True).ravel()
        if abs(np.linalg.norm(w) - 1.0) > UNIT_NORM_TOL:
            raise ValueError(f"direction must have unit norm, got {np.linalg.norm(w):.3e}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "method", DirectionMethod(self.method))

    @property
    def d(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class SolverOptions:
    """Options for the iterative classifiers (SVM, DWD).

    Args:
        c_penalty: Slack penalty; None selects the method default
            (1.0 for SVM, 100 / median^2 of between-class distances for DWD)
        tol: Optimality tolerance (KKT violation for SVM, duality gap for DWD)
        max_iter: Iteration cap; None selects the method default
    """

    c_penalty: Optional[float] = None
    tol: float = 1e-6
    max_iter: Optional[int] = None

    def __post_init__(self):
        if self.c_penalty is not None and not self.c_penalty > 0:
            raise ConfigError(f"c_penalty must be positive, got {self.c_penalty}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.max_iter is not None and self.max_iter < 1:
            raise ConfigError(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass(frozen=True, eq=False)
class ScatterMatrices:
    """Within-class scatter W and total scatter of the pooled, globally centered data."""

    within_w: np.ndarray
    total_s: np.ndarray
    n_total: int

    @property
    def pooled_unbiased(self) -> np.ndarray:
        """S_u = W / (N - 2)."""
        if self.n_total <= 2:
            raise SingularCovariance(f"pooled covariance needs N > 2, got N={self.n_total}")
        return self.within_w / (self.n_total - 2)


def within_centered(sp: SamplePair) -> np.ndarray:
    """Rows of X and Y, each centered at its own group mean (N x d)."""
    return np.vstack([sp.x_rows - sp.x_rows.mean(axis=0), sp.y_rows - sp.y_rows.mean(axis=0)])


def globally_centered(sp: SamplePair) -> np.ndarray:
    """Pooled rows centered at the pooled mean (N x d)."""
    z = np.vstack([sp.x_rows, sp.y_rows])
    return z - z.mean(axis=0)


def scatter_matrices(sp: SamplePair) -> ScatterMatrices:
    within = within_centered(sp)
    total = globally_centered(sp)
    return ScatterMatrices(within.T @ within, total.T @ total, sp.total)


def checked_mean_difference(sp: SamplePair, method: DirectionMethod) -> np.ndarray:
    """X-bar minus Y-bar, raising DegenerateDirection when the centroids coincide."""
    x_bar = sp.x_rows.mean(axis=0)
    y_bar = sp.y_rows.mean(axis=0)
    delta = x_bar - y_bar
    threshold = 1e-14 * (1.0 + np.linalg.norm(x_bar) + np.linalg.norm(y_bar))
    if np.linalg.norm(delta) < threshold:
        raise DegenerateDirection(f"{method.display}: sample centroids coincide")
    return delta


def oriented_unit(raw: np.ndarray, sp: SamplePair, method: DirectionMethod) -> DirectionVector:
    """Normalize ``raw`` and flip it, if needed, so X projects above Y on average."""
    norm = np.linalg.norm(raw)
    if not np.isfinite(norm) or norm == 0.0:
        raise DegenerateDirection(f"{method.display}: zero normal vector")
    w = raw / norm
    gap = (sp.x_rows @ w).mean() - (sp.y_rows @ w).mean()
    if gap < 0:
        w = -w
    return DirectionVector(w, method)
