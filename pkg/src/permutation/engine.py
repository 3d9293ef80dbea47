"""
Step 3 of DiProPerm: rerun direction and statistic on random relabelings.
"""

import logging
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd

from src.data.samples import PooledSample, SamplePair, pool, unpool
from src.directions import DirectionMethod, SolverOptions, compute_direction
from src.errors import DegenerateDirection, DegenerateNull, DiPropermError, SolverError
from src.permutation.plan import PermutationPlan, map_ordered
from src.permutation.pvalues import empirical_pvalue, gaussian_fit_pvalue, smoothed_pvalue, z_score
from src.permutation.results import PermutationResult
from src.stats.evaluate import evaluate
from src.stats.summary import project
from src.stats.univariate import StatKind

logger = logging.getLogger(__name__)

PROJECTION_COLUMNS = ["value", "group", "world"]


def permute_labels(pooled: PooledSample, rng: np.random.Generator) -> PooledSample:
    """Reorder the pooled rows by a uniform random permutation drawn from ``rng``."""
    return pooled.reordered(rng.permutation(pooled.total))


def permuted_pair(pooled: PooledSample, plan: PermutationPlan, replicate: int) -> SamplePair:
    """The relabeled SamplePair of replicate ``replicate`` (0-based) under ``plan``."""
    return unpool(permute_labels(pooled, plan.rng.stream(replicate)))


def run_index_permutations(
    total: int,
    statistic: Callable[[np.ndarray], float],
    plan: PermutationPlan,
) -> np.ndarray:
    """
    Evaluate ``statistic`` on the row order of each of the plan's B relabelings.

    Replicate k receives the permutation of range(total) drawn from
    ``plan.rng.stream(k)``; the first m entries of the order form group 1.
    Replicates whose direction is degenerate score 0.0. Solver failures are
    re-raised as SolverError carrying the replicate index.

    Returns:
        Array of B permuted statistics in replicate order
    """

    def replicate(k: int) -> float:
        try:
            return float(statistic(plan.rng.stream(k).permutation(total)))
        except DegenerateDirection as e:
            logger.warning(f"Replicate {k}: degenerate direction ({e}), scored 0")
            return 0.0
        except SolverError as e:
            raise SolverError(
                f"replicate {k}: {e}",
                residual=e.residual,
                iterations=e.iterations,
                replicate=k,
            ) from e
        except DiPropermError as e:
            logger.error(f"Replicate {k} failed: {type(e).__name__}: {e}")
            raise

    return np.array(map_ordered(replicate, range(plan.b_perms), plan.workers), dtype=float)


def run_permutations(
    sp: SamplePair,
    statistic: Callable[[SamplePair], float],
    plan: PermutationPlan,
) -> np.ndarray:
    """Evaluate ``statistic`` on each of the plan's B relabeled SamplePairs."""
    pooled = pool(sp)
    return run_index_permutations(
        sp.total,
        lambda order: statistic(unpool(pooled.reordered(order))),
        plan,
    )


def run_diproperm(
    sp: SamplePair,
    direction: Union[DirectionMethod, str],
    stat: Union[StatKind, str],
    plan: Optional[PermutationPlan] = None,
    solver_opts: Optional[SolverOptions] = None,
) -> PermutationResult:
    """
    Direction-Projection-Permutation test.

    Args:
        sp: Two-sample data
        direction: Classifier giving the direction
        stat: Univariate statistic of the projections
        plan: Relabeling plan (B, seed policy, workers)
        solver_opts: SVM/DWD solver options

    Returns:
        PermutationResult with empirical p-value, Gaussian-fit p-value and z-score

    Raises:
        DegenerateDirection: If the direction on the original labels is degenerate
        SolverError: If a solver fails, on the original data or on a replicate
    """
    direction = DirectionMethod(direction)
    stat = StatKind(stat)
    plan = plan or PermutationPlan()
    logger.info(
        f"DiProPerm {direction.display}-{stat.label}: {sp.shape_summary()}, "
        f"B={plan.b_perms}, seed={plan.seed}, workers={plan.workers}"
    )

    observed = evaluate(sp, direction, stat, solver_opts)
    perm_stats = run_permutations(sp, lambda permuted: evaluate(permuted, direction, stat, solver_opts), plan)

    try:
        z = z_score(observed, perm_stats)
        gauss_p = gaussian_fit_pvalue(observed, perm_stats)
    except DegenerateNull as e:
        logger.warning(f"Gaussian-fit indicators unavailable: {e}")
        z, gauss_p = None, None

    result = PermutationResult(
        observed=observed,
        perm_stats=perm_stats,
        empirical_p=empirical_pvalue(observed, perm_stats),
        gauss_p=gauss_p,
        z_score=z,
        direction_method=direction,
        stat_kind=stat,
        seed=plan.seed,
        smoothed_p=smoothed_pvalue(observed, perm_stats) if plan.smoothed else None,
    )
    logger.info(f"Finished {result.summary()}")
    return result


def reject(result: PermutationResult, alpha: float) -> bool:
    """Level-alpha decision rule: reject iff empirical p < alpha."""
    return result.reject(alpha)


def replay_projections(
    sp: SamplePair,
    direction: Union[DirectionMethod, str],
    plan: PermutationPlan,
    worlds: int,
    solver_opts: Optional[SolverOptions] = None,
) -> pd.DataFrame:
    """
    Projections of the original world and the first ``worlds`` permuted worlds.

    World "perm_k" (k = 1, 2, ...) reuses the relabeling of replicate k - 1,
    so the table matches the statistics of a run with the same plan.

    Returns:
        DataFrame with columns value, group, world ("original" or "perm_k")
    """
    direction = DirectionMethod(direction)
    pooled = pool(sp)
    frames = []
    for world in range(min(worlds, plan.b_perms) + 1):
        data = sp if world == 0 else permuted_pair(pooled, plan, world - 1)
        name = "original" if world == 0 else f"perm_{world}"
        try:
            ps = project(data, compute_direction(data, direction, solver_opts))
        except DegenerateDirection as e:
            logger.warning(f"World {name}: degenerate direction ({e}), skipped")
            continue
        frames.append(
            pd.DataFrame(
                {
                    "value": np.concatenate([ps.px, ps.py]),
                    "group": [sp.label_x] * ps.m + [sp.label_y] * ps.n,
                    "world": name,
                }
            )
        )
    if not frames:
        return pd.DataFrame(columns=PROJECTION_COLUMNS)
    return pd.concat(frames, ignore_index=True)
