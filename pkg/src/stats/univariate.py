"""
Univariate two-sample statistics computed on projected data.

All statistics are oriented so that larger values mean more separation of
class X above class Y.
"""

import warnings
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from src.data.samples import SamplePair
from src.errors import DataError, DegenerateStatWarning, PairingError, ZeroVariance
from src.stats.summary import ProjectionSummary


class StatKind(str, Enum):
    """Univariate statistics; values are the command-line codes."""

    MEAN_DIFF = "md"
    WELCH_T = "t"
    SCALED_MEAN_DIFF = "smd"
    MEDIAN_DIFF = "med"
    MEDIAN_OVER_MAD = "medmad"
    AUC = "auc"
    PAIRED_T = "pairt"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            wanted = value.strip().lower()
            for member in cls:
                if wanted in (member.value, member.label.lower(), member.name.lower()):
                    return member
        return None

    @property
    def label(self) -> str:
        """Short name used in test names such as MD-t or MD-scaled-MD."""
        return _LABELS[self]


_LABELS = {
    StatKind.MEAN_DIFF: "MD",
    StatKind.WELCH_T: "t",
    StatKind.SCALED_MEAN_DIFF: "scaled-MD",
    StatKind.MEDIAN_DIFF: "MedDiff",
    StatKind.MEDIAN_OVER_MAD: "MedMAD",
    StatKind.AUC: "AUC",
    StatKind.PAIRED_T: "paired-t",
}


def stat_mean_diff(ps: ProjectionSummary) -> float:
    """Difference of projected means."""
    return ps.mean_x - ps.mean_y


def stat_welch_t(ps: ProjectionSummary) -> float:
    """
    Welch two-sample t statistic of the projections.

    Returns +inf (with a DegenerateStatWarning) when both projected
    variances are zero but the means differ, whatever the sign of the
    difference.

    Raises:
        DataError: If either group has fewer than two observations
        ZeroVariance: If both variances are zero and the means are equal
    """
    if ps.m < 2 or ps.n < 2:
        raise DataError(f"Welch t needs at least two observations per group (m={ps.m}, n={ps.n})")
    diff = ps.mean_x - ps.mean_y
    if ps.s_value == 0.0:
        if diff == 0.0:
            raise ZeroVariance("Welch t: zero variance in both groups and equal means")
        warnings.warn("Welch t: zero within-group variance, returning an infinite statistic", DegenerateStatWarning)
        return float(np.inf)
    return float(diff / np.sqrt(ps.s_value))


def stat_scaled_mean_diff(ps: ProjectionSummary, sx2: float, sy2: float) -> float:
    """T_{m,n} divided by sqrt(sx2/m + sy2/n), sx2 and sy2 from the raw d-dimensional samples."""
    scale = sx2 / ps.m + sy2 / ps.n
    if scale <= 0.0:
        raise ZeroVariance("scaled MD: both per-coordinate variances are zero")
    return float(ps.t_value / np.sqrt(scale))


def stat_median_diff(ps: ProjectionSummary) -> float:
    return float(np.median(ps.px) - np.median(ps.py))


def stat_median_over_mad(ps: ProjectionSummary) -> float:
    """Median difference over the median of pooled absolute deviations about each group's median."""
    med_x, med_y = np.median(ps.px), np.median(ps.py)
    deviations = np.concatenate([np.abs(ps.px - med_x), np.abs(ps.py - med_y)])
    mad = float(np.median(deviations))
    if mad == 0.0:
        raise ZeroVariance("median over MAD: pooled MAD is zero")
    return float((med_x - med_y) / mad)


def stat_auc(ps: ProjectionSummary) -> float:
    """Mann-Whitney AUC with X as the positive class; ties count one half."""
    ranks = rankdata(np.concatenate([ps.px, ps.py]))
    u_stat = ranks[: ps.m].sum() - ps.m * (ps.m + 1) / 2.0
    return float(u_stat / (ps.m * ps.n))


def stat_paired_t(ps: ProjectionSummary) -> float:
    """
    One-sample t statistic of the row-wise differences px_i - py_i.

    Raises:
        PairingError: If m != n
        ZeroVariance: If the differences are constant
    """
    if ps.m != ps.n:
        raise PairingError(f"paired t needs equal group sizes, got m={ps.m}, n={ps.n}")
    if ps.m < 2:
        raise DataError("paired t needs at least two pairs")
    diffs = ps.px - ps.py
    sd = float(np.std(diffs, ddof=1))
    if sd == 0.0:
        raise ZeroVariance("paired t: differences are constant")
    return float(diffs.mean() / (sd / np.sqrt(ps.m)))


def coordinate_pooled_variance(rows: np.ndarray) -> float:
    """Per-coordinate pooled variance: trace of the sample covariance divided by d."""
    rows = np.asarray(rows, dtype=float)
    if rows.shape[0] < 2:
        return 0.0
    return float(np.var(rows, axis=0, ddof=1).sum() / rows.shape[1])


def md_variance_sum(sp: SamplePair) -> float:
    """S_{m,n} computed on projections onto the unnormalized vector X-bar minus Y-bar."""
    v = sp.mean_difference()
    px, py = sp.x_rows @ v, sp.y_rows @ v
    var_x = float(np.var(px, ddof=1)) if sp.m > 1 else 0.0
    var_y = float(np.var(py, ddof=1)) if sp.n > 1 else 0.0
    return var_x / sp.m + var_y / sp.n
