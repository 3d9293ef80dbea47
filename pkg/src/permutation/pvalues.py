"""Significance indicators of a permutation test."""

from typing import Sequence

import numpy as np
from scipy.stats import norm

from src.errors import DegenerateNull


def empirical_pvalue(observed: float, perm_stats: Sequence[float]) -> float:
    """Proportion of permuted statistics strictly exceeding the observed one."""
    perm_stats = np.asarray(perm_stats, dtype=float)
    if perm_stats.size == 0:
        raise DegenerateNull("no permuted statistics")
    return float(np.count_nonzero(perm_stats > observed) / perm_stats.size)


def smoothed_pvalue(observed: float, perm_stats: Sequence[float]) -> float:
    """(1 + #{perm >= observed}) / (B + 1); never zero."""
    perm_stats = np.asarray(perm_stats, dtype=float)
    return float((1 + np.count_nonzero(perm_stats >= observed)) / (perm_stats.size + 1))


def z_score(observed: float, perm_stats: Sequence[float]) -> float:
    """
    Standardized distance of the observed statistic from the permutation distribution.

    Uses the sample standard deviation (ddof=1).

    Raises:
        DegenerateNull: If B < 2 or the permuted statistics are constant or non-finite
    """
    perm_stats = np.asarray(perm_stats, dtype=float)
    if perm_stats.size < 2:
        raise DegenerateNull(f"a Gaussian fit needs at least two permuted statistics, got {perm_stats.size}")
    if not np.all(np.isfinite(perm_stats)):
        raise DegenerateNull("permuted statistics contain non-finite values")
    sd = float(np.std(perm_stats, ddof=1))
    if sd == 0.0:
        raise DegenerateNull("permuted statistics are constant")
    return float((observed - perm_stats.mean()) / sd)


def gaussian_fit_pvalue(observed: float, perm_stats: Sequence[float]) -> float:
    """Upper-tail probability of the observed statistic under a Gaussian fitted to the permuted ones."""
    return float(norm.sf(z_score(observed, perm_stats)))
