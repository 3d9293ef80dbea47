"""Distance Weighted Discrimination direction.

DWD minimizes sum_i 1/r_i + C * sum_i xi_i subject to r_i = y_i (w.x_i + b) + xi_i,
r_i >= 0, xi_i >= 0 and ||w|| <= 1. Eliminating the slacks gives, per point with
margin u_i = y_i (w.x_i + b), the convex and continuously differentiable loss

    V_C(u) = 1/u              if u >= 1/sqrt(C)
           = 2 sqrt(C) - C u  otherwise

so the fit is a smooth convex problem over the unit ball. Any optimal w lies in
the span of the centered data, so the solver works in the coordinates of its
thin SVD and handles ||w|| <= 1 with a log barrier, following the central path
with damped Newton steps until the barrier parameter (a bound on the duality
gap) drops below ``tol``.
"""

import logging
from typing import Optional, Union

import numpy as np
from scipy import linalg as sla
from scipy.optimize import minimize_scalar
from scipy.spatial.distance import cdist

from src.data.samples import SamplePair
from src.directions.base import (
    DirectionMethod,
    DirectionVector,
    SolverOptions,
    globally_centered,
    oriented_unit,
)
from src.directions.linalg import numerical_rtol
from src.errors import DegenerateDirection, SolverError

logger = logging.getLogger(__name__)

DEFAULT_PENALTY_SCALE = 100.0
DEFAULT_NEWTON_CAP = 500
MU_SHRINK = 0.1
ARMIJO = 0.25
MAX_BACKTRACK = 60


def default_dwd_penalty(sp: SamplePair) -> float:
    """C = 100 / median^2 of the m * n distances between X rows and Y rows."""
    median = float(np.median(cdist(sp.x_rows, sp.y_rows)))
    if median == 0.0:
        raise DegenerateDirection("DWD: all between-class distances are zero")
    return DEFAULT_PENALTY_SCALE / median**2


def dwd_loss(margins: np.ndarray, c_penalty: float) -> np.ndarray:
    """Per-point DWD loss V_C at the given functional margins."""
    root = np.sqrt(c_penalty)
    safe = np.maximum(margins, 1.0 / root)
    return np.where(margins >= 1.0 / root, 1.0 / safe, 2.0 * root - c_penalty * margins)


def _unit_loss(margins: np.ndarray) -> np.ndarray:
    safe = np.maximum(margins, 1.0)
    return np.where(margins >= 1.0, 1.0 / safe, 2.0 - margins)


def dwd_objective(
    sp: SamplePair,
    w: Union[np.ndarray, DirectionVector],
    c_penalty: Optional[float] = None,
) -> float:
    """
    DWD objective of a fixed normal vector, minimized over the intercept.

    Args:
        sp: Two-sample data
        w: Normal vector with ||w|| <= 1
        c_penalty: Slack penalty; defaults to :func:`default_dwd_penalty`

    Returns:
        min_b sum_i V_C(y_i (w.x_i + b))
    """
    w = np.asarray(getattr(w, "w", w), dtype=float)
    if np.linalg.norm(w) > 1.0 + 1e-9:
        raise ValueError("DWD objective is defined for ||w|| <= 1")
    c = c_penalty or default_dwd_penalty(sp)
    z = np.vstack([sp.x_rows, sp.y_rows])
    y = sp.labels()
    projections = z @ w
    spread = np.abs(projections).max() + 2.0 * np.sqrt(sp.total / c)
    result = minimize_scalar(
        lambda b: dwd_loss(y * (projections + b), c).sum(),
        bounds=(-spread, spread),
        method="bounded",
        options={"xatol": 1e-12 * (1.0 + spread)},
    )
    return float(result.fun)


class DwdSolver:
    """Barrier-Newton DWD solver in the span of the centered pooled data."""

    def __init__(self, options: Optional[SolverOptions] = None):
        """
        Initialize the solver.

        Args:
            options: Penalty (None for the median-distance default), duality-gap
                tolerance and cap on the total number of Newton steps
        """
        self.options = options or SolverOptions()
        self.iterations_ = 0
        self.residual_ = float("nan")
        self.objective_ = float("nan")
        self.c_penalty_: Optional[float] = None

    def _barrier_value(self, design: np.ndarray, theta: np.ndarray, rank: int, mu: float) -> float:
        v = theta[:rank]
        slack = 1.0 - v @ v
        if slack <= 0.0:
            return np.inf
        return float(_unit_loss(design @ theta).sum() - mu * np.log(slack))

    def _newton_step(self, design: np.ndarray, theta: np.ndarray, rank: int, mu: float):
        margins = design @ theta
        v = theta[:rank]
        slack = 1.0 - v @ v
        safe = np.maximum(margins, 1.0)
        first = np.where(margins >= 1.0, -1.0 / safe**2, -1.0)
        second = np.where(margins >= 1.0, 2.0 / safe**3, 0.0)

        grad = design.T @ first
        grad[:rank] += 2.0 * mu * v / slack
        hess = (design.T * second) @ design
        hess[:rank, :rank] += mu * (2.0 / slack * np.eye(rank) + 4.0 * np.outer(v, v) / slack**2)
        hess[np.diag_indices_from(hess)] += 1e-10 * (1.0 + np.trace(hess) / hess.shape[0])
        try:
            step = -sla.solve(hess, grad, assume_a="pos")
        except (sla.LinAlgError, ValueError):
            step = -sla.lstsq(hess, grad)[0]
        return step, float(-grad @ step)

    def fit(self, sp: SamplePair) -> np.ndarray:
        """
        Solve DWD and return the unnormalized normal vector.

        Args:
            sp: Two-sample data

        Returns:
            Weight vector of length d with norm close to 1

        Raises:
            DegenerateDirection: If the optimal w is (numerically) zero
            SolverError: If the Newton-step cap is reached before the gap closes
        """
        c = self.options.c_penalty or default_dwd_penalty(sp)
        self.c_penalty_ = c
        z = globally_centered(sp)
        y = sp.labels()
        _, s, vt = np.linalg.svd(z, full_matrices=False)
        if s.size == 0 or s[0] == 0.0:
            raise DegenerateDirection("DWD: pooled data has no spread")
        keep = s**2 >= numerical_rtol(sp.d, sp.total) * s[0] ** 2
        basis = vt[keep]
        rank = basis.shape[0]

        # scaling by sqrt(C) turns V_C into sqrt(C) * V_1
        coords = (z @ basis.T) * np.sqrt(c)
        design = y[:, None] * np.hstack([coords, np.ones((sp.total, 1))])

        theta = np.zeros(rank + 1)
        reduced_md = basis @ sp.mean_difference()
        if np.linalg.norm(reduced_md) > 0:
            theta[:rank] = 0.5 * reduced_md / np.linalg.norm(reduced_md)

        cap = self.options.max_iter or DEFAULT_NEWTON_CAP
        mu = MU_SHRINK * max(_unit_loss(design @ theta).sum(), 1.0)
        steps = 0
        while True:
            for _ in range(cap):
                if steps >= cap:
                    self.iterations_, self.residual_ = steps, mu
                    raise SolverError(
                        f"DWD reached {cap} Newton steps with duality gap bound {mu:.3e}",
                        residual=mu,
                        iterations=steps,
                    )
                steps += 1
                step, decrement = self._newton_step(design, theta, rank, mu)
                if decrement <= 0.2 * mu:
                    break
                t = 1.0
                while np.sum((theta[:rank] + t * step[:rank]) ** 2) >= 1.0:
                    t *= 0.5
                current = self._barrier_value(design, theta, rank, mu)
                for _ in range(MAX_BACKTRACK):
                    if self._barrier_value(design, theta + t * step, rank, mu) <= current - ARMIJO * t * decrement:
                        break
                    t *= 0.5
                else:
                    break
                theta = theta + t * step
            objective = float(_unit_loss(design @ theta).sum())
            if mu <= self.options.tol * max(1.0, objective):
                break
            mu *= MU_SHRINK

        self.iterations_, self.residual_ = steps, mu
        self.objective_ = np.sqrt(c) * objective
        v = theta[:rank]
        if np.linalg.norm(v) < 1e-6:
            raise DegenerateDirection("DWD: normal vector vanishes at the optimum")
        logger.debug(f"DWD converged in {steps} Newton steps, objective {self.objective_:.6g}")
        return basis.T @ v


def dwd_direction(sp: SamplePair, options: Optional[SolverOptions] = None) -> DirectionVector:
    """Unit DWD direction."""
    raw = DwdSolver(options).fit(sp)
    return oriented_unit(raw, sp, DirectionMethod.DWD)
