"""Maximal Data Piling direction.

Uses the total scatter of the globally centered pooled data. When d >= N - 1
every training point of a class projects to the same value on the returned
direction.
"""

import numpy as np

from src.data.samples import SamplePair
from src.directions.base import (
    DirectionMethod,
    DirectionVector,
    checked_mean_difference,
    globally_centered,
    oriented_unit,
)
from src.directions.linalg import gram_pinv_apply, numerical_rtol
from src.errors import DegenerateDirection


def mdp_direction(sp: SamplePair) -> DirectionVector:
    """Unit vector along S^+ (X-bar - Y-bar), S the total scatter matrix."""
    delta = checked_mean_difference(sp, DirectionMethod.MDP)
    raw, largest = gram_pinv_apply(globally_centered(sp), delta, numerical_rtol(sp.d, sp.total))
    if largest == 0.0 or np.linalg.norm(raw) * largest <= 1e-12 * np.linalg.norm(delta):
        raise DegenerateDirection("MDP: mean difference is orthogonal to the total scatter")
    return oriented_unit(raw, sp, DirectionMethod.MDP)
