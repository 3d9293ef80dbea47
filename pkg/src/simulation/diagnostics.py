"""
High-dimensional scaling diagnostics.

With unequal variances the variance sum S_{m,n} of projections onto the
unnormalized mean difference grows like d on the original labels but like d^2
after relabeling, which is why the MD-t statistic separates the two worlds.
"""

import logging
from typing import Sequence

import numpy as np
import pandas as pd

from src.data.samples import SamplePair, pool, unpool
from src.directions.base import DirectionMethod
from src.errors import SpecError
from src.permutation.engine import permute_labels
from src.permutation.plan import PermutationPlan, map_ordered
from src.simulation.distributions import DistributionSpec, sample_distribution
from src.stats.evaluate import evaluate
from src.stats.univariate import StatKind, md_variance_sum

logger = logging.getLogger(__name__)

SCALING_COLUMNS = ["d", "median_s_over_d", "median_perm_s_over_d", "median_md_t", "median_perm_md_t"]


def scaling_diagnostic(
    d_list: Sequence[int],
    m: int,
    n: int,
    sigma_y_sq: float,
    reps: int,
    plan: PermutationPlan,
    sigma_x_sq: float = 1.0,
) -> pd.DataFrame:
    """
    Medians over ``reps`` draws of S/d and S_pi/d, plus observed and permuted MD-t.

    Draw r at dimension index i uses ``plan.rng.child(i).child(r)``: X from
    stream 0, Y from stream 1 and one relabeling from stream 2. Draws run on
    ``plan.workers`` threads without changing the result. The data are
    X ~ N(0, sigma_x^2 I_d) and Y ~ N(0, sigma_y^2 I_d).

    Returns:
        DataFrame with one row per d and the SCALING_COLUMNS columns
    """
    if not (sigma_x_sq > 0 and sigma_y_sq > 0):
        raise SpecError("variances must be positive")
    rows = []
    for index, d in enumerate(d_list):
        f1 = DistributionSpec.spherical(d, variance=sigma_x_sq)
        f2 = DistributionSpec.spherical(d, variance=sigma_y_sq)

        def draw(r: int) -> tuple:
            rep_rng = plan.rng.child(index).child(r)
            sp = SamplePair(sample_distribution(f1, m, rep_rng.stream(0)), sample_distribution(f2, n, rep_rng.stream(1)))
            permuted = unpool(permute_labels(pool(sp), rep_rng.stream(2)))
            return (
                md_variance_sum(sp) / d,
                md_variance_sum(permuted) / d,
                evaluate(sp, DirectionMethod.MD, StatKind.WELCH_T),
                evaluate(permuted, DirectionMethod.MD, StatKind.WELCH_T),
            )

        s_values, perm_s_values, md_t, perm_md_t = zip(*map_ordered(draw, range(reps), plan.workers))
        row = {
            "d": d,
            "median_s_over_d": float(np.median(s_values)),
            "median_perm_s_over_d": float(np.median(perm_s_values)),
            "median_md_t": float(np.median(md_t)),
            "median_perm_md_t": float(np.median(perm_md_t)),
        }
        logger.info(f"Scaling d={d}: S/d={row['median_s_over_d']:.4g}, S_pi/d={row['median_perm_s_over_d']:.4g}")
        rows.append(row)
    return pd.DataFrame(rows, columns=SCALING_COLUMNS)


def expected_pair_distance(sigma_x_sq: float, sigma_y_sq: float, d: int) -> float:
    """Leading-order distance between independent draws: sqrt((sigma_x^2 + sigma_y^2) d)."""
    if not (sigma_x_sq > 0 and sigma_y_sq > 0):
        raise SpecError("variances must be positive")
    return float(np.sqrt((sigma_x_sq + sigma_y_sq) * d))


def mean_pair_distance(
    sigma_x_sq: float,
    sigma_y_sq: float,
    d: int,
    pairs: int,
    rng: np.random.Generator,
) -> float:
    """Monte Carlo mean of ||X - Y|| over ``pairs`` independent Gaussian pairs."""
    x = np.sqrt(sigma_x_sq) * rng.standard_normal((pairs, d))
    y = np.sqrt(sigma_y_sq) * rng.standard_normal((pairs, d))
    return float(np.linalg.norm(x - y, axis=1).mean())
