"""Tests for the iterative SVM and DWD solvers."""

import numpy as np
import pytest
from scipy.stats import ortho_group

from src.data import SamplePair
from src.directions import DwdSolver, SolverOptions, SvmSolver, compute_direction, default_dwd_penalty, dwd_objective
from src.directions.dwd import dwd_loss
from src.errors import SolverError

@pytest.fixture
def overlapping_pair():
    """Two overlapping Gaussian clouds in 4 dimensions."""
    rng = np.random.default_rng(8)
    x = rng.standard_normal((12, 4)) + np.array([1.0, 0.5, 0.0, 0.0])
    y = rng.standard_normal((10, 4))
    return SamplePair(x, y)

@pytest.fixture
def separated_pair():
    """Two well separated Gaussian clusters in 5 dimensions."""
    rng = np.random.default_rng(12)
    shift = np.zeros(5)
    shift[0] = 5.0
    return SamplePair(rng.standard_normal((20, 5)) + shift, rng.standard_normal((20, 5)))

def _angle_degrees(a, b):
    cosine = np.clip(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)), -1.0, 1.0)
    return float(np.degrees(np.arccos(cosine)))

def test_svm_rotation_equivariance(overlapping_pair):
    """Rotating the data rotates the SVM direction."""
    q = ortho_group.rvs(4, random_state=3)
    opts = SolverOptions(tol=1e-10)
    rotated = SamplePair(overlapping_pair.x_rows @ q.T, overlapping_pair.y_rows @ q.T)
    w = compute_direction(overlapping_pair, "svm", opts).w
    w_rotated = compute_direction(rotated, "svm", opts).w
    np.testing.assert_allclose(w_rotated, q @ w, atol=1e-6)

def test_svm_kkt_gap_below_tolerance(overlapping_pair):
    """A converged fit reports its final gap and keeps sum(beta) = 0 inside the box."""
    solver = SvmSolver(SolverOptions(c_penalty=0.5, tol=1e-8))
    solver.fit(overlapping_pair)
    beta = solver.dual_coef_
    assert solver.residual_ <= 1e-8
    assert abs(beta.sum()) < 1e-10
    y = overlapping_pair.labels()
    alpha = beta * y
    assert np.all(alpha >= -1e-12)
    assert np.all(alpha <= 0.5 + 1e-12)

def test_svm_iteration_cap_raises(overlapping_pair):
    """Stopping at the iteration cap is a SolverError carrying the residual."""
    with pytest.raises(SolverError) as excinfo:
        SvmSolver(SolverOptions(max_iter=1)).fit(overlapping_pair)
    assert excinfo.value.iterations == 1
    assert excinfo.value.residual > 0

def test_default_dwd_penalty():
    """C = 100 / median^2 of between-class distances."""
    sp = SamplePair([[0.0], [1.0]], [[3.0], [5.0]])
    # distances 3, 5, 2, 4 -> median 3.5
    assert default_dwd_penalty(sp) == pytest.approx(100.0 / 3.5**2)

def test_dwd_loss_is_continuous_at_the_kink():
    """Both branches of the loss meet at u = 1 / sqrt(C)."""
    c = 4.0
    kink = 1.0 / np.sqrt(c)
    values = dwd_loss(np.array([kink - 1e-9, kink, kink + 1e-9]), c)
    np.testing.assert_allclose(values, [2.0, 2.0, 2.0], atol=1e-7)
    assert dwd_loss(np.array([-1.0]), c)[0] == pytest.approx(2.0 * np.sqrt(c) + c)

def test_dwd_objective_beats_md_and_svm(separated_pair):
    """The DWD direction has the smallest DWD objective among DWD, MD and SVM."""
    solver = DwdSolver(SolverOptions(tol=1e-8))
    raw = solver.fit(separated_pair)
    c = solver.c_penalty_
    w_dwd = raw / np.linalg.norm(raw)
    dwd_value = dwd_objective(separated_pair, w_dwd, c)
    for method in ("md", "svm"):
        competitor = dwd_objective(separated_pair, compute_direction(separated_pair, method), c)
        assert dwd_value <= competitor * (1.0 + 1e-5)

def test_dwd_reports_objective(separated_pair):
    """The solver's objective agrees with the objective of its own direction."""
    solver = DwdSolver()
    raw = solver.fit(separated_pair)
    assert solver.iterations_ > 0
    assert solver.objective_ == pytest.approx(dwd_objective(separated_pair, raw, solver.c_penalty_), rel=1e-3)

def test_dwd_close_to_md_for_separated_clusters():
    """For clusters shifted by 5 along one axis DWD stays within 30 degrees of MD."""
    rng = np.random.default_rng(2024)
    shift = np.zeros(10)
    shift[0] = 5.0
    sp = SamplePair(rng.standard_normal((50, 10)) + shift, rng.standard_normal((50, 10)))
    w_dwd = compute_direction(sp, "dwd").w
    w_md = compute_direction(sp, "md").w
    assert _angle_degrees(w_dwd, w_md) < 30.0

def test_dwd_newton_cap_raises(overlapping_pair):
    """A one-step cap cannot close the duality gap."""
    with pytest.raises(SolverError) as excinfo:
        DwdSolver(SolverOptions(max_iter=1)).fit(overlapping_pair)
    assert excinfo.value.iterations >= 1

def test_dwd_objective_rejects_long_vectors(separated_pair):
    """The objective is only defined inside the unit ball."""
    with pytest.raises(ValueError):
        dwd_objective(separated_pair, np.array([2.0, 0.0, 0.0, 0.0, 0.0]))
