"""Direction + projection + statistic: the single entry point behind every named test."""

from typing import Optional, Tuple, Union

from src.data.samples import SamplePair
from src.directions import DirectionMethod, DirectionVector, SolverOptions, compute_direction
from src.stats.summary import ProjectionSummary, project
from src.stats.univariate import (
    StatKind,
    coordinate_pooled_variance,
    stat_auc,
    stat_mean_diff,
    stat_median_diff,
    stat_median_over_mad,
    stat_paired_t,
    stat_scaled_mean_diff,
    stat_welch_t,
)

_PROJECTION_ONLY = {
    StatKind.MEAN_DIFF: stat_mean_diff,
    StatKind.WELCH_T: stat_welch_t,
    StatKind.MEDIAN_DIFF: stat_median_diff,
    StatKind.MEDIAN_OVER_MAD: stat_median_over_mad,
    StatKind.AUC: stat_auc,
    StatKind.PAIRED_T: stat_paired_t,
}


def pairing_name(method: Union[DirectionMethod, str], stat: Union[StatKind, str]) -> str:
    """Conventional name of a direction/statistic pairing, e.g. "DWD-t"."""
    return f"{DirectionMethod(method).display}-{StatKind(stat).label}"


def statistic_value(stat: Union[StatKind, str], ps: ProjectionSummary, sp: SamplePair) -> float:
    """Compute ``stat`` on a projection of ``sp``; ScaledMeanDiff also reads the raw samples."""
    stat = StatKind(stat)
    if stat is StatKind.SCALED_MEAN_DIFF:
        return stat_scaled_mean_diff(
            ps,
            coordinate_pooled_variance(sp.x_rows),
            coordinate_pooled_variance(sp.y_rows),
        )
    return _PROJECTION_ONLY[stat](ps)


def evaluate_detailed(
    sp: SamplePair,
    direction: Union[DirectionMethod, str],
    stat: Union[StatKind, str],
    solver_opts: Optional[SolverOptions] = None,
) -> Tuple[DirectionVector, ProjectionSummary, float]:
    """Like :func:`evaluate`, also returning the direction and the projections."""
    w = compute_direction(sp, direction, solver_opts)
    ps = project(sp, w)
    return w, ps, statistic_value(stat, ps, sp)


def evaluate(
    sp: SamplePair,
    direction: Union[DirectionMethod, str],
    stat: Union[StatKind, str],
    solver_opts: Optional[SolverOptions] = None,
) -> float:
    """
    Compose direction, projection and statistic.

    Args:
        sp: Two-sample data
        direction: Classifier giving the direction
        stat: Univariate statistic of the projections
        solver_opts: SVM/DWD solver options

    Returns:
        Statistic value (larger means more separation)
    """
    return evaluate_detailed(sp, direction, stat, solver_opts)[2]
