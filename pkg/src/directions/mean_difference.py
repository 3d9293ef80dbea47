"""Mean Difference (centroid) direction."""

from src.data.samples import SamplePair
from src.directions.base import DirectionMethod, DirectionVector, checked_mean_difference, oriented_unit


def md_direction(sp: SamplePair) -> DirectionVector:
    """Unit vector along X-bar minus Y-bar.

    Raises:
        DegenerateDirection: If the two centroids coincide
    """
    delta = checked_mean_difference(sp, DirectionMethod.MD)
    return oriented_unit(delta, sp, DirectionMethod.MD)
