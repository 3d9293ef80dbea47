"""Energy-distance two-sample test."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from src.data.samples import SamplePair
from src.errors import DegenerateNull
from src.permutation.engine import run_index_permutations
from src.permutation.plan import PermutationPlan
from src.permutation.pvalues import empirical_pvalue, gaussian_fit_pvalue, smoothed_pvalue, z_score
from src.permutation.results import json_number

logger = logging.getLogger(__name__)


def _energy_from_distances(distances: np.ndarray, ix: np.ndarray, iy: np.ndarray) -> float:
    m, n = ix.size, iy.size
    between = distances[np.ix_(ix, iy)].sum()
    within_x = distances[np.ix_(ix, ix)].sum()
    within_y = distances[np.ix_(iy, iy)].sum()
    return float(m * n / (m + n) * (2.0 * between / (m * n) - within_x / m**2 - within_y / n**2))


def energy_statistic(sp: SamplePair) -> float:
    """
    Energy statistic (mn/N) [2/(mn) sum ||X_i - Y_j|| - 1/m^2 sum ||X_i - X_j|| - 1/n^2 sum ||Y_i - Y_j||].

    Within-sample sums run over all ordered pairs, zero diagonal included.
    """
    between = cdist(sp.x_rows, sp.y_rows).sum()
    within_x = squareform(pdist(sp.x_rows)).sum() if sp.m > 1 else 0.0
    within_y = squareform(pdist(sp.y_rows)).sum() if sp.n > 1 else 0.0
    m, n = sp.m, sp.n
    return float(m * n / (m + n) * (2.0 * between / (m * n) - within_x / m**2 - within_y / n**2))


@dataclass(frozen=True, eq=False)
class EnergyResult:
    """Energy statistic with its permutation p-value."""

    statistic: float
    empirical_p: float
    b_perms: int
    perm_stats: np.ndarray
    seed: int
    gauss_p: Optional[float] = None
    z_score: Optional[float] = None
    smoothed_p: Optional[float] = None

    def reject(self, alpha: float) -> bool:
        return self.empirical_p < alpha

    def to_dict(self, max_perm_stats: Optional[int] = None) -> Dict[str, Any]:
        stats = self.perm_stats
        truncated = max_perm_stats is not None and stats.size > max_perm_stats
        if truncated:
            stats = stats[:max_perm_stats]
        record = {
            "method": "energy",
            "stat": "energy",
            "observed": json_number(self.statistic),
            "empirical_p": self.empirical_p,
            "gauss_p": json_number(self.gauss_p),
            "z": json_number(self.z_score),
            "b_perms": self.b_perms,
            "seed": self.seed,
            "perm_stats": [json_number(v) for v in stats],
            "perm_stats_truncated": truncated,
        }
        if self.smoothed_p is not None:
            record["smoothed_p"] = self.smoothed_p
        return record


def energy_test(sp: SamplePair, plan: Optional[PermutationPlan] = None) -> EnergyResult:
    """
    Energy-distance permutation test.

    The pooled distance matrix is computed once; each replicate only re-indexes it.
    Relabelings come from the same seed substreams as :func:`run_diproperm`.
    """
    plan = plan or PermutationPlan()
    pooled = np.vstack([sp.x_rows, sp.y_rows])
    distances = squareform(pdist(pooled))
    m = sp.m
    observed = _energy_from_distances(distances, np.arange(m), np.arange(m, sp.total))
    perm_stats = run_index_permutations(
        sp.total,
        lambda order: _energy_from_distances(distances, order[:m], order[m:]),
        plan,
    )
    try:
        z, gauss_p = z_score(observed, perm_stats), gaussian_fit_pvalue(observed, perm_stats)
    except DegenerateNull as e:
        logger.warning(f"Energy test: Gaussian-fit indicators unavailable: {e}")
        z, gauss_p = None, None
    result = EnergyResult(
        statistic=observed,
        empirical_p=empirical_pvalue(observed, perm_stats),
        b_perms=plan.b_perms,
        perm_stats=perm_stats,
        seed=plan.seed,
        gauss_p=gauss_p,
        z_score=z,
        smoothed_p=smoothed_pvalue(observed, perm_stats) if plan.smoothed else None,
    )
    logger.info(f"Energy test: statistic={observed:.6g}, empirical p={result.empirical_p:.4g} (B={plan.b_perms})")
    return result
