"""Soft-margin linear Support Vector Machine direction.

The dual problem is solved by sequential minimal optimization on the Gram
matrix of the globally centered pooled data. With beta_i = y_i * alpha_i the
box constraints become A_i <= beta_i <= B_i and the equality constraint
sum(beta) = 0, so every step moves one maximal violating pair (i, j) along
e_i - e_j and clips to the box.
"""

import logging
from typing import Optional

import numpy as np

from src.data.samples import SamplePair
from src.directions.base import (
    DirectionMethod,
    DirectionVector,
    SolverOptions,
    globally_centered,
    oriented_unit,
)
from src.errors import DegenerateDirection, SolverError

logger = logging.getLogger(__name__)

DEFAULT_SVM_PENALTY = 1.0
TAU = 1e-12


class SvmSolver:
    """SMO solver returning the primal normal vector w = sum_i alpha_i y_i z_i."""

    def __init__(self, options: Optional[SolverOptions] = None):
        """
        Initialize the solver.

        Args:
            options: Penalty, KKT tolerance and iteration cap
        """
        self.options = options or SolverOptions()
        self.c_penalty = self.options.c_penalty or DEFAULT_SVM_PENALTY
        self.iterations_ = 0
        self.residual_ = float("nan")
        self.dual_coef_: Optional[np.ndarray] = None

    def fit(self, sp: SamplePair) -> np.ndarray:
        """
        Solve the dual and return the unnormalized normal vector.

        Args:
            sp: Two-sample data

        Returns:
            Raw weight vector of length d

        Raises:
            SolverError: If the KKT gap stays above tol after max_iter steps
            DegenerateDirection: If the weight vector vanishes
        """
        z = globally_centered(sp)
        y = sp.labels()
        n_total = sp.total
        c = self.c_penalty
        gram = z @ z.T
        diag = np.diag(gram)

        lower = np.where(y > 0, 0.0, -c)
        upper = np.where(y > 0, c, 0.0)
        beta = np.zeros(n_total)
        grad = y.copy()
        max_iter = self.options.max_iter or 100000 * n_total

        gap = np.inf
        for iteration in range(max_iter):
            up = np.flatnonzero(beta < upper)
            down = np.flatnonzero(beta > lower)
            if up.size == 0 or down.size == 0:
                # every coefficient at a bound: no feasible pair left
                gap = 0.0
                break
            i = int(up[np.argmax(grad[up])])
            j = int(down[np.argmin(grad[down])])
            gap = grad[i] - grad[j]
            if gap <= self.options.tol:
                break
            curvature = diag[i] + diag[j] - 2.0 * gram[i, j]
            if curvature <= 0:
                curvature = TAU
            step = min(upper[i] - beta[i], beta[j] - lower[j], gap / curvature)
            beta[i] += step
            beta[j] -= step
            grad -= step * (gram[:, i] - gram[:, j])
        else:
            self.iterations_, self.residual_ = max_iter, float(gap)
            raise SolverError(
                f"SVM did not converge in {max_iter} iterations (KKT gap {gap:.3e})",
                residual=float(gap),
                iterations=max_iter,
            )

        self.iterations_, self.residual_ = iteration, float(max(gap, 0.0))
        self.dual_coef_ = beta
        w = z.T @ beta
        scale = np.sum(np.abs(beta) * np.linalg.norm(z, axis=1))
        if scale == 0.0 or np.linalg.norm(w) <= 1e-10 * scale:
            raise DegenerateDirection("SVM: normal vector vanishes at the optimum")
        logger.debug(f"SVM converged in {iteration} iterations, gap {self.residual_:.2e}")
        return w


def svm_direction(sp: SamplePair, options: Optional[SolverOptions] = None) -> DirectionVector:
    """Unit SVM direction."""
    raw = SvmSolver(options).fit(sp)
    return oriented_unit(raw, sp, DirectionMethod.SVM)
