"""Step 3 of DiProPerm: the permutation test and its significance indicators."""

from src.permutation.engine import (
    permute_labels,
    permuted_pair,
    reject,
    replay_projections,
    run_diproperm,
    run_index_permutations,
    run_permutations,
)
from src.permutation.plan import PermutationMode, PermutationPlan, map_ordered
from src.permutation.pvalues import empirical_pvalue, gaussian_fit_pvalue, smoothed_pvalue, z_score
from src.permutation.results import NullHypothesis, PermutationResult, null_for, recommend_test

__all__ = [
    "NullHypothesis",
    "PermutationMode",
    "PermutationPlan",
    "PermutationResult",
    "empirical_pvalue",
    "gaussian_fit_pvalue",
    "map_ordered",
    "null_for",
    "permute_labels",
    "permuted_pair",
    "recommend_test",
    "reject",
    "replay_projections",
    "run_diproperm",
    "run_index_permutations",
    "run_permutations",
    "smoothed_pvalue",
    "z_score",
]
