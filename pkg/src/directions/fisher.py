"""Fisher Linear Discrimination with a pseudoinverse for rank-deficient scatter."""

import numpy as np

from src.data.samples import SamplePair
from src.directions.base import (
    DirectionMethod,
    DirectionVector,
    checked_mean_difference,
    oriented_unit,
    within_centered,
)
from src.directions.linalg import gram_pinv_apply, numerical_rtol
from src.errors import DegenerateDirection


def fisher_raw_direction(sp: SamplePair) -> np.ndarray:
    """Unnormalized W^+ (X-bar - Y-bar), W the within-class scatter matrix.

    When W is nonsingular this is W^{-1} delta, so delta^T of the result is the
    Mahalanobis-type quantity used by Hotelling's T^2.
    """
    delta = checked_mean_difference(sp, DirectionMethod.FLD)
    raw, largest = gram_pinv_apply(within_centered(sp), delta, numerical_rtol(sp.d, sp.total))
    if largest == 0.0:
        raise DegenerateDirection("FLD: within-class scatter is zero")
    # mean difference lies outside the range of W
    if np.linalg.norm(raw) * largest <= 1e-12 * np.linalg.norm(delta):
        raise DegenerateDirection("FLD: mean difference is orthogonal to the within-class scatter")
    return raw


def fld_direction(sp: SamplePair) -> DirectionVector:
    """Unit FLD direction.

    Raises:
        DegenerateDirection: If centroids coincide or W^+ delta vanishes
    """
    return oriented_unit(fisher_raw_direction(sp), sp, DirectionMethod.FLD)
