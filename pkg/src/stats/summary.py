"""Step 2 projections and their moments."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from src.data.samples import SamplePair
from src.directions.base import DirectionVector
from src.errors import DataError


def _unbiased_var(values: np.ndarray) -> float:
    # a single observation carries no spread information
    return float(np.var(values, ddof=1)) if values.size > 1 else 0.0


@dataclass(frozen=True, eq=False)
class ProjectionSummary:
    """Projected samples with their means, unbiased variances, T_{m,n} and S_{m,n}.

    ``t_value`` is the difference of projected means; it equals T_{m,n} when
    the projection direction is the unit MD direction.
    """

    px: np.ndarray
    py: np.ndarray
    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    t_value: float
    s_value: float

    @classmethod
    def from_projections(cls, px, py) -> "ProjectionSummary":
        px = np.array(px, dtype=float, copy=True).ravel()
        py = np.array(py, dtype=float, copy=True).ravel()
        if px.size == 0 or py.size == 0:
            raise DataError("projections of both groups must be nonempty")
        px.setflags(write=False)
        py.setflags(write=False)
        mean_x, mean_y = float(px.mean()), float(py.mean())
        var_x, var_y = _unbiased_var(px), _unbiased_var(py)
        return cls(
            px=px,
            py=py,
            mean_x=mean_x,
            mean_y=mean_y,
            var_x=var_x,
            var_y=var_y,
            t_value=mean_x - mean_y,
            s_value=var_x / px.size + var_y / py.size,
        )

    @property
    def m(self) -> int:
        return self.px.size

    @property
    def n(self) -> int:
        return self.py.size


def project(sp: SamplePair, w: Union[DirectionVector, np.ndarray]) -> ProjectionSummary:
    """Project every row of X and Y onto ``w``.

    Args:
        sp: Two-sample data
        w: Direction (a DirectionVector or any length-d vector)

    Returns:
        ProjectionSummary of px = X w and py = Y w

    Raises:
        DataError: If the direction length differs from d
    """
    vector = np.asarray(getattr(w, "w", w), dtype=float).ravel()
    if vector.shape[0] != sp.d:
        raise DataError(f"direction has length {vector.shape[0]}, data have d={sp.d}")
    return ProjectionSummary.from_projections(sp.x_rows @ vector, sp.y_rows @ vector)
