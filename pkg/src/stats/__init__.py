"""Step 2 of DiProPerm: projections and univariate two-sample statistics."""

from src.stats.evaluate import evaluate, evaluate_detailed, pairing_name, statistic_value
from src.stats.summary import ProjectionSummary, project
from src.stats.univariate import (
    StatKind,
    coordinate_pooled_variance,
    md_variance_sum,
    stat_auc,
    stat_mean_diff,
    stat_median_diff,
    stat_median_over_mad,
    stat_paired_t,
    stat_scaled_mean_diff,
    stat_welch_t,
)

__all__ = [
    "ProjectionSummary",
    "StatKind",
    "coordinate_pooled_variance",
    "evaluate",
    "evaluate_detailed",
    "md_variance_sum",
    "project",
    "stat_auc",
    "stat_mean_diff",
    "stat_median_diff",
    "stat_median_over_mad",
    "stat_paired_t",
    "stat_scaled_mean_diff",
    "stat_welch_t",
    "statistic_value",
    "pairing_name",
]
