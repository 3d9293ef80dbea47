"""Tests for projections, univariate statistics and the evaluate dispatcher."""

import statistics
import warnings

import numpy as np
import pytest
from scipy import stats

from src.data import SamplePair
from src.directions import DirectionMethod
from src.errors import DataError, DegenerateDirection, DegenerateStatWarning, PairingError, ZeroVariance
from src.stats import (
    ProjectionSummary,
    StatKind,
    coordinate_pooled_variance,
    evaluate,
    evaluate_detailed,
    pairing_name,
    project,
    stat_auc,
    stat_mean_diff,
    stat_median_diff,
    stat_median_over_mad,
    stat_paired_t,
    stat_scaled_mean_diff,
    stat_welch_t,
    statistic_value,
)

def summary(px, py):
    return ProjectionSummary.from_projections(px, py)

@pytest.fixture
def random_pair():
    """A small Gaussian two-sample problem with a mean shift of (3, 4) in the first two coordinates."""
    rng = np.random.default_rng(17)
    x = rng.standard_normal((9, 6))
    y = rng.standard_normal((7, 6))
    x = x - x.mean(axis=0) + np.array([3.0, 4.0, 0.0, 0.0, 0.0, 0.0])
    y = y - y.mean(axis=0)
    return SamplePair(x, y)

@pytest.fixture
def balanced_pair():
    """Eight observations per group in 5 dimensions, Y shifted and more spread out."""
    rng = np.random.default_rng(23)
    return SamplePair(rng.standard_normal((8, 5)) + 1.0, 2.0 * rng.standard_normal((8, 5)))

def test_project_example():
    """X = {(1,0), (3,0)}, Y = {(0,0)}, w = (1,0)."""
    ps = project(SamplePair([[1.0, 0.0], [3.0, 0.0]], [[0.0, 0.0]]), np.array([1.0, 0.0]))
    np.testing.assert_array_equal(ps.px, [1.0, 3.0])
    np.testing.assert_array_equal(ps.py, [0.0])
    assert (ps.mean_x, ps.mean_y) == (2.0, 0.0)
    assert ps.var_x == 2.0
    assert ps.var_y == 0.0

def test_project_rejects_wrong_length():
    """The direction must have length d."""
    with pytest.raises(DataError):
        project(SamplePair([[1.0, 0.0]], [[0.0, 0.0]]), np.array([1.0, 0.0, 0.0]))

def test_project_md_direction_gives_mean_distance(random_pair):
    """On the unit MD direction the projected mean difference is ||X-bar - Y-bar||."""
    w, ps, value = evaluate_detailed(random_pair, DirectionMethod.MD, StatKind.MEAN_DIFF)
    assert ps.t_value == pytest.approx(5.0)
    assert value == pytest.approx(5.0)

def test_projection_ignores_orthogonal_components():
    """Adding a vector orthogonal to w to every row leaves the projections unchanged."""
    x = np.array([[1.0, 2.0], [0.0, 1.0]])
    y = np.array([[3.0, -1.0]])
    w = np.array([1.0, 0.0])
    shifted = SamplePair(x + [0.0, 9.0], y + [0.0, 9.0])
    np.testing.assert_array_equal(project(shifted, w).px, project(SamplePair(x, y), w).px)

def test_stat_kind_codes():
    """Stat kinds resolve from codes, labels and names."""
    assert StatKind("t") is StatKind.WELCH_T
    assert StatKind("scaled-MD") is StatKind.SCALED_MEAN_DIFF
    assert StatKind("AUC") is StatKind.AUC
    assert pairing_name("md", "smd") == "MD-scaled-MD"
    assert pairing_name(DirectionMethod.DWD, StatKind.WELCH_T) == "DWD-t"

def test_mean_diff_examples():
    """Mean difference of projections."""
    assert stat_mean_diff(summary([1.0, 3.0], [0.0])) == 2.0
    assert stat_mean_diff(summary([1.0, 2.0], [1.0, 2.0])) == 0.0

def test_welch_t_example():
    """px = {0, 2}, py = {5, 7} gives -5 / sqrt(2)."""
    assert stat_welch_t(summary([0.0, 2.0], [5.0, 7.0])) == pytest.approx(-3.5355339059327378, abs=1e-12)

def test_welch_t_identical_samples():
    """Identical projections give t = 0."""
    assert stat_welch_t(summary([1.0, 2.0, 4.0], [1.0, 2.0, 4.0])) == 0.0

def test_welch_t_scale_invariant():
    """Multiplying every projection by 10 leaves t unchanged."""
    px, py = np.array([0.3, 1.2, 2.0]), np.array([-0.5, 0.1, 0.4, 0.9])
    assert stat_welch_t(summary(10 * px, 10 * py)) == pytest.approx(stat_welch_t(summary(px, py)), rel=1e-12)

def test_welch_t_matches_scipy():
    """Welch t agrees with scipy's unequal-variance t test."""
    rng = np.random.default_rng(4)
    for _ in range(50):
        px, py = rng.standard_normal(7), 2.0 * rng.standard_normal(11) + 0.3
        expected = stats.ttest_ind(px, py, equal_var=False).statistic
        assert stat_welch_t(summary(px, py)) == pytest.approx(expected, rel=1e-12, abs=1e-12)

def test_welch_t_zero_variance():
    """Zero variance: equal means raise, different means give a flagged infinity."""
    with pytest.raises(ZeroVariance):
        stat_welch_t(summary([1.0, 1.0], [1.0, 1.0]))
    with pytest.warns(DegenerateStatWarning):
        value = stat_welch_t(summary([2.0, 2.0], [1.0, 1.0]))
    assert value == np.inf

def test_welch_t_zero_variance_sentinel_is_positive():
    """The zero-variance sentinel is +inf even when Y projects above X."""
    with pytest.warns(DegenerateStatWarning):
        value = stat_welch_t(summary([1.0, 1.0], [2.0, 2.0]))
    assert value == np.inf

def test_welch_t_needs_two_per_group():
    """A single observation in a group has no variance estimate."""
    with pytest.raises(DataError):
        stat_welch_t(summary([1.0], [0.0, 2.0]))

def test_scaled_mean_diff_example():
    """T = 5, sx2 = sy2 = 1, m = n = 50 gives 25."""
    ps = summary(np.full(50, 5.0), np.zeros(50))
    assert stat_scaled_mean_diff(ps, 1.0, 1.0) == pytest.approx(25.0)
    with pytest.raises(ZeroVariance):
        stat_scaled_mean_diff(ps, 0.0, 0.0)

def test_scaled_mean_diff_scale_invariant(random_pair):
    """Rescaling the raw data leaves MD-scaled-MD unchanged."""
    scaled = SamplePair(3.0 * random_pair.x_rows, 3.0 * random_pair.y_rows)
    original = evaluate(random_pair, "md", "smd")
    assert evaluate(scaled, "md", "smd") == pytest.approx(original, rel=1e-12)

def test_coordinate_pooled_variance():
    """Trace of the sample covariance divided by d."""
    rows = np.array([[0.0, 0.0], [2.0, 4.0]])
    # column variances 2 and 8
    assert coordinate_pooled_variance(rows) == pytest.approx(5.0)
    assert coordinate_pooled_variance(rows[:1]) == 0.0

def test_median_statistics_example():
    """px = {0, 2, 4}, py = {1}: difference 1, pooled MAD 1, ratio 1."""
    ps = summary([0.0, 2.0, 4.0], [1.0])
    assert stat_median_diff(ps) == 1.0
    assert stat_median_over_mad(ps) == 1.0

def test_median_diff_symmetric():
    """px = -py gives twice the median of px."""
    px = np.array([1.0, 2.0, 6.0])
    assert stat_median_diff(summary(px, -px)) == 4.0

def test_median_over_mad_zero_spread():
    """A zero pooled MAD raises ZeroVariance."""
    with pytest.raises(ZeroVariance):
        stat_median_over_mad(summary([1.0, 1.0, 1.0], [0.0, 0.0, 0.0]))

def test_auc_examples():
    """Full separation, all ties and an interleaved case."""
    assert stat_auc(summary([2.0, 3.0], [0.0, 1.0])) == 1.0
    assert stat_auc(summary([1.0, 1.0], [1.0, 1.0])) == 0.5
    assert stat_auc(summary([0.0, 2.0], [1.0, 3.0])) == 0.25

def test_auc_complement_and_brute_force():
    """AUC(px, py) + AUC(py, px) = 1 and matches pairwise counting."""
    rng = np.random.default_rng(9)
    for _ in range(100):
        px = rng.integers(0, 5, size=6).astype(float)
        py = rng.integers(0, 5, size=4).astype(float)
        brute = np.mean([(a > b) + 0.5 * (a == b) for a in px for b in py])
        forward = stat_auc(summary(px, py))
        assert forward == pytest.approx(brute, abs=1e-12)
        assert forward + stat_auc(summary(py, px)) == pytest.approx(1.0, abs=1e-12)

def test_paired_t_examples():
    """Constant differences raise; px = {0, 4}, py = {0, 0} gives 1."""
    with pytest.raises(ZeroVariance):
        stat_paired_t(summary([1.0, 2.0], [0.0, 1.0]))
    assert stat_paired_t(summary([0.0, 4.0], [0.0, 0.0])) == pytest.approx(1.0)
    with pytest.raises(PairingError):
        stat_paired_t(summary([0.0, 4.0, 1.0], [0.0, 0.0]))

def test_statistics_match_brute_force_on_random_directions(random_pair):
    """Welch t, medians, median over MAD and AUC of random projections match direct computations."""
    rng = np.random.default_rng(31)
    for _ in range(1000):
        w = rng.standard_normal(random_pair.d)
        ps = project(random_pair, w)
        px, py = random_pair.x_rows @ w, random_pair.y_rows @ w
        welch = (px.mean() - py.mean()) / np.sqrt(px.var(ddof=1) / px.size + py.var(ddof=1) / py.size)
        assert statistic_value("t", ps, random_pair) == pytest.approx(welch, rel=1e-12, abs=1e-12)
        med_x, med_y = statistics.median(px.tolist()), statistics.median(py.tolist())
        assert statistic_value("med", ps, random_pair) == pytest.approx(med_x - med_y, abs=1e-12)
        mad = statistics.median([abs(a - med_x) for a in px] + [abs(b - med_y) for b in py])
        assert statistic_value("medmad", ps, random_pair) == pytest.approx((med_x - med_y) / mad, rel=1e-12, abs=1e-12)
        brute_auc = np.mean([(a > b) + 0.5 * (a == b) for a in px for b in py])
        assert statistic_value("auc", ps, random_pair) == pytest.approx(brute_auc, abs=1e-12)

@pytest.mark.parametrize("stat", list(StatKind))
def test_statistics_invariant_to_common_shift(stat, balanced_pair):
    """Adding the same constant to every projection leaves each statistic unchanged."""
    ps = project(balanced_pair, balanced_pair.mean_difference())
    moved = summary(ps.px + 2.5, ps.py + 2.5)
    expected = statistic_value(stat, ps, balanced_pair)
    assert statistic_value(stat, moved, balanced_pair) == pytest.approx(expected, rel=1e-9, abs=1e-9)

@pytest.mark.parametrize(
    "stat,power",
    [("t", 0), ("auc", 0), ("medmad", 0), ("pairt", 0), ("md", 1), ("med", 1), ("smd", 1)],
)
def test_statistics_under_positive_rescaling(stat, power, balanced_pair):
    """Scaling the projections by 4 leaves t, AUC, MedMAD and paired t alone and scales MD and MedDiff by 4."""
    ps = project(balanced_pair, balanced_pair.mean_difference())
    scaled = summary(4.0 * ps.px, 4.0 * ps.py)
    expected = 4.0**power * statistic_value(stat, ps, balanced_pair)
    assert statistic_value(stat, scaled, balanced_pair) == pytest.approx(expected, rel=1e-12, abs=1e-12)

def test_evaluate_md_on_three_four_five():
    """evaluate(MD, MeanDiff) on data with X-bar - Y-bar = (3, 4) is 5."""
    assert evaluate(SamplePair([[3.0, 4.0]], [[0.0, 0.0]]), "md", "md") == pytest.approx(5.0)

def test_evaluate_welch_invariant_to_direction_scale(random_pair):
    """MD-t only depends on the projections' shape, not the direction's length."""
    _, ps, value = evaluate_detailed(random_pair, "md", "t")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rescaled = summary(7.0 * ps.px, 7.0 * ps.py)
        assert stat_welch_t(rescaled) == pytest.approx(value, rel=1e-12)

def test_evaluate_propagates_degenerate_direction():
    """A degenerate direction surfaces from evaluate."""
    with pytest.raises(DegenerateDirection):
        evaluate(SamplePair([[1.0], [-1.0]], [[0.0]]), "md", "md")
