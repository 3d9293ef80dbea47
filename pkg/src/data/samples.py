"""Two-sample containers: the labelled pair and its pooled form."""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from src.errors import DataError, EmptyGroupError


def _frozen_matrix(values, name: str) -> np.ndarray:
    matrix = np.array(values, dtype=float, copy=True)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.ndim != 2:
        raise DataError(f"{name} must be a 2-D matrix, got {matrix.ndim} dimensions")
    if not np.all(np.isfinite(matrix)):
        raise DataError(f"{name} contains NaN or infinite entries")
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class SamplePair:
    """Two independent samples X (m x d) and Y (n x d).

    Rows are observations, columns are features. Both matrices are copied and
    made read-only, so a pair can be shared freely between worker threads.

    Args:
        x_rows: observations of the first group (class X)
        y_rows: observations of the second group (class Y)
        label_x: name of the first group's label
        label_y: name of the second group's label
    """

    x_rows: np.ndarray
    y_rows: np.ndarray
    label_x: str = "X"
    label_y: str = "Y"

    def __post_init__(self):
        x = _frozen_matrix(self.x_rows, "x_rows")
        y = _frozen_matrix(self.y_rows, "y_rows")
        if x.shape[0] < 1 or y.shape[0] < 1:
            raise EmptyGroupError(f"both samples need at least one row (m={x.shape[0]}, n={y.shape[0]})")
        if x.shape[1] < 1:
            raise DataError("samples need at least one feature column")
        if x.shape[1] != y.shape[1]:
            raise DataError(f"dimension mismatch: X has d={x.shape[1]}, Y has d={y.shape[1]}")
        object.__setattr__(self, "x_rows", x)
        object.__setattr__(self, "y_rows", y)

    @property
    def m(self) -> int:
        return self.x_rows.shape[0]

    @property
    def n(self) -> int:
        return self.y_rows.shape[0]

    @property
    def d(self) -> int:
        return self.x_rows.shape[1]

    @property
    def total(self) -> int:
        """N = m + n."""
        return self.m + self.n

    def mean_difference(self) -> np.ndarray:
        """Centroid difference X-bar minus Y-bar."""
        return self.x_rows.mean(axis=0) - self.y_rows.mean(axis=0)

    def labels(self) -> np.ndarray:
        """+1 for rows of X, -1 for rows of Y, in pooled order."""
        return np.concatenate([np.ones(self.m), -np.ones(self.n)])

    def shape_summary(self) -> str:
        return f"m={self.m}, n={self.n}, d={self.d} ({self.label_x} vs {self.label_y})"


@dataclass(frozen=True, eq=False)
class PooledSample:
    """Pooled sample Z of N = m + n rows; the first ``split_m`` rows form group 1."""

    z_rows: np.ndarray
    split_m: int
    label_x: str = field(default="X")
    label_y: str = field(default="Y")

    def __post_init__(self):
        z = _frozen_matrix(self.z_rows, "z_rows")
        if not 1 <= self.split_m < z.shape[0]:
            raise EmptyGroupError(f"split_m={self.split_m} leaves an empty group among N={z.shape[0]} rows")
        object.__setattr__(self, "z_rows", z)

    @property
    def total(self) -> int:
        return self.z_rows.shape[0]

    def reordered(self, order: np.ndarray) -> "PooledSample":
        """Return the pool with rows taken in ``order``; split_m is kept."""
        order = np.asarray(order)
        if order.shape != (self.total,) or not np.array_equal(np.sort(order), np.arange(self.total)):
            raise DataError("row order must be a permutation of range(N)")
        return PooledSample(self.z_rows[order], self.split_m, self.label_x, self.label_y)

    def groups(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.z_rows[: self.split_m], self.z_rows[self.split_m :]


def pool(sp: SamplePair) -> PooledSample:
    """Stack X then Y into one pooled sample with split_m = m."""
    return PooledSample(np.vstack([sp.x_rows, sp.y_rows]), sp.m, sp.label_x, sp.label_y)


def unpool(pooled: PooledSample) -> SamplePair:
    """Split a pooled sample back into its two groups (first split_m rows are X)."""
    x_rows, y_rows = pooled.groups()
    return SamplePair(x_rows, y_rows, pooled.label_x, pooled.label_y)
