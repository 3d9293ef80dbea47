"""Permutation test results, their serialization and reading guidance."""

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from src.directions.base import DirectionMethod
from src.stats.univariate import StatKind

# smallest Gaussian-fit p-value still worth reporting instead of the z-score
REPRESENTABLE_P = 1e-300


class NullHypothesis(str, Enum):
    """What a direction/statistic pairing actually tests."""

    EQUAL_DISTRIBUTIONS = "equal-distributions"
    EQUAL_MEANS = "equal-means"


# equal means do not imply equal medians
_DISTRIBUTION_SENSITIVE = {StatKind.WELCH_T, StatKind.MEDIAN_DIFF, StatKind.MEDIAN_OVER_MAD, StatKind.AUC}


def null_for(stat: StatKind) -> NullHypothesis:
    """Variance-, median- and rank-based statistics only test equality of distributions."""
    if StatKind(stat) in _DISTRIBUTION_SENSITIVE:
        return NullHypothesis.EQUAL_DISTRIBUTIONS
    return NullHypothesis.EQUAL_MEANS


def recommend_test(null: NullHypothesis, m: int, n: int) -> Tuple[DirectionMethod, StatKind]:
    """
    Advised (direction, statistic) pairing for a null hypothesis.

    Equal distributions: DWD-t. Equal means: MD-MD for balanced samples,
    MD-scaled-MD otherwise (the unscaled mean difference is only calibrated
    for the mean hypothesis when m = n).
    """
    null = NullHypothesis(null)
    if null is NullHypothesis.EQUAL_DISTRIBUTIONS:
        return DirectionMethod.DWD, StatKind.WELCH_T
    if m == n:
        return DirectionMethod.MD, StatKind.MEAN_DIFF
    return DirectionMethod.MD, StatKind.SCALED_MEAN_DIFF


def json_number(value: Optional[float]) -> Any:
    if value is None:
        return None
    value = float(value)
    if math.isfinite(value):
        return value
    return "inf" if value > 0 else ("-inf" if value < 0 else "nan")


@dataclass(frozen=True, eq=False)
class PermutationResult:
    """Outcome of one DiProPerm run.

    ``gauss_p`` and ``z_score`` are None when the permutation distribution is
    degenerate (constant or non-finite), in which case only the empirical
    p-value is available.
    """

    observed: float
    perm_stats: np.ndarray
    empirical_p: float
    gauss_p: Optional[float]
    z_score: Optional[float]
    direction_method: DirectionMethod
    stat_kind: StatKind
    seed: int
    smoothed_p: Optional[float] = None

    def __post_init__(self):
        stats = np.array(self.perm_stats, dtype=float, copy=True)
        stats.setflags(write=False)
        object.__setattr__(self, "perm_stats", stats)
        object.__setattr__(self, "direction_method", DirectionMethod(self.direction_method))
        object.__setattr__(self, "stat_kind", StatKind(self.stat_kind))

    @property
    def b_perms(self) -> int:
        return int(self.perm_stats.size)

    @property
    def name(self) -> str:
        return f"{self.direction_method.display}-{self.stat_kind.label}"

    @property
    def null_hypothesis(self) -> NullHypothesis:
        return null_for(self.stat_kind)

    def reject(self, alpha: float) -> bool:
        """Level-alpha decision: reject iff the empirical p-value is below alpha."""
        return self.empirical_p < alpha

    def preferred_indicator(self) -> Tuple[str, float]:
        """
        The indicator to read first.

        Empirical p while it is informative (non-zero), then the Gaussian-fit
        p-value while representable, then the z-score.
        """
        if self.empirical_p > 0 or self.gauss_p is None:
            return "empirical_p", self.empirical_p
        if self.gauss_p > REPRESENTABLE_P or self.z_score is None:
            return "gauss_p", self.gauss_p
        return "z", self.z_score

    def summary(self) -> str:
        gauss = "n/a" if self.gauss_p is None else f"{self.gauss_p:.3g}"
        z = "n/a" if self.z_score is None else f"{self.z_score:.2f}"
        text = (
            f"{self.name}: observed={self.observed:.6g}, empirical p={self.empirical_p:.4g} "
            f"(B={self.b_perms}), Gaussian-fit p={gauss}, z={z}"
        )
        if self.smoothed_p is not None:
            text += f", smoothed p={self.smoothed_p:.4g}"
        return text

    def to_dict(self, max_perm_stats: Optional[int] = None) -> Dict[str, Any]:
        """
        JSON-ready mapping.

        Args:
            max_perm_stats: Keep only the first this many permuted statistics
                (``perm_stats_truncated`` records whether anything was dropped)
        """
        stats = self.perm_stats
        truncated = max_perm_stats is not None and stats.size > max_perm_stats
        if truncated:
            stats = stats[:max_perm_stats]
        record = {
            "method": self.direction_method.display,
            "stat": self.stat_kind.label,
            "observed": json_number(self.observed),
            "empirical_p": self.empirical_p,
            "gauss_p": json_number(self.gauss_p),
            "z": json_number(self.z_score),
            "b_perms": self.b_perms,
            "seed": self.seed,
            "null": self.null_hypothesis.value,
            "perm_stats": [json_number(v) for v in stats],
            "perm_stats_truncated": truncated,
        }
        if self.smoothed_p is not None:
            record["smoothed_p"] = self.smoothed_p
        return record

    def to_json(self, max_perm_stats: Optional[int] = None, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(max_perm_stats), indent=indent)
