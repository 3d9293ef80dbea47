"""
Monte Carlo size and power estimation for DiProPerm and the baseline tests.

Repetition r of an estimate draws X from ``plan.rng.child(r).stream(0)``, Y
from ``stream(1)`` and runs its test with the permutation substreams of
``plan.rng.child(r).child(2)``. Repetitions run in parallel on
``plan.workers`` threads; each inner test is single-threaded.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import binom

from src.baselines.energy import energy_test
from src.baselines.hotelling import hotelling_t2
from src.baselines.random_projection import RPConfig, rp_test
from src.data.samples import SamplePair
from src.directions.base import DirectionMethod, SolverOptions
from src.errors import ConfigError, DiPropermError, SolverError
from src.permutation.engine import run_diproperm
from src.permutation.plan import PermutationPlan, map_ordered
from src.simulation.distributions import DistributionSpec, sample_distribution, setting_pair
from src.stats.univariate import StatKind

logger = logging.getLogger(__name__)

DESK_MC_REPS = 200
DESK_PERMUTATIONS = 100

POWER_COLUMNS = ["mu1", "sigma1sq", "d", "rejection_rate", "stderr", "test", "m", "n", "alpha", "reps", "seed"]


class BaselineKind(str, Enum):
    ENERGY = "energy"
    RP = "rp"
    HOTELLING = "hotelling"


@dataclass(frozen=True)
class TestDescriptor:
    """Either a DiProPerm pairing (direction, stat) or a baseline tag."""

    __test__ = False

    direction: Optional[DirectionMethod] = None
    stat: Optional[StatKind] = None
    baseline: Optional[BaselineKind] = None
    solver_opts: Optional[SolverOptions] = None
    rp_k: Optional[int] = None

    def __post_init__(self):
        if self.baseline is not None:
            if self.direction is not None or self.stat is not None:
                raise ConfigError("a test is either a baseline or a direction/statistic pairing, not both")
            object.__setattr__(self, "baseline", BaselineKind(self.baseline))
            return
        if self.direction is None or self.stat is None:
            raise ConfigError("a DiProPerm test needs both a direction and a statistic")
        object.__setattr__(self, "direction", DirectionMethod(self.direction))
        object.__setattr__(self, "stat", StatKind(self.stat))

    @classmethod
    def parse(cls, text: str, solver_opts: Optional[SolverOptions] = None) -> "TestDescriptor":
        """Parse "energy", "rp", "hotelling" or a pairing such as "MD-t", "dwd:t" or "MD-scaled-MD"."""
        key = text.strip()
        if key.lower() in {b.value for b in BaselineKind}:
            return cls(baseline=BaselineKind(key.lower()))
        for sep in (":", "-"):
            if sep in key:
                direction, stat = key.split(sep, 1)
                try:
                    return cls(direction=DirectionMethod(direction), stat=StatKind(stat), solver_opts=solver_opts)
                except ValueError as e:
                    raise ConfigError(f"unknown test {text!r}: {e}") from e
        raise ConfigError(f"unknown test {text!r}")

    @property
    def label(self) -> str:
        if self.baseline is not None:
            return self.baseline.value
        return f"{self.direction.display}-{self.stat.label}"

    def rejects(self, sp: SamplePair, plan: PermutationPlan, alpha: float) -> bool:
        """Run the test on ``sp`` and decide at level ``alpha``."""
        if self.baseline is BaselineKind.ENERGY:
            return energy_test(sp, plan).reject(alpha)
        if self.baseline is BaselineKind.HOTELLING:
            return hotelling_t2(sp).reject(alpha)
        if self.baseline is BaselineKind.RP:
            return rp_test(sp, RPConfig(k=self.rp_k, rng=plan.rng)).reject(alpha)
        return run_diproperm(sp, self.direction, self.stat, plan, self.solver_opts).reject(alpha)


@dataclass(frozen=True)
class PowerEstimate:
    """Rejection count of one grid point; rejection_rate = rejections / mc_reps exactly."""

    test: str
    m: int
    n: int
    d: int
    alpha: float
    mc_reps: int
    rejections: int
    seed: int
    mu1: Optional[float] = None
    sigma1_sq: Optional[float] = None

    @property
    def rejection_rate(self) -> float:
        return self.rejections / self.mc_reps

    @property
    def stderr(self) -> float:
        """Binomial standard error of the rejection rate."""
        rate = self.rejection_rate
        return float(np.sqrt(rate * (1.0 - rate) / self.mc_reps))

    def to_row(self) -> dict:
        return {
            "mu1": self.mu1,
            "sigma1sq": self.sigma1_sq,
            "d": self.d,
            "rejection_rate": self.rejection_rate,
            "stderr": self.stderr,
            "test": self.test,
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "reps": self.mc_reps,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PowerGrid:
    """Power-surface grid for F1 = N(mu1 * 1, sigma1^2 I_d) against F2 = N(0, I_d)."""

    mu1_values: Tuple[float, ...]
    sigma1_sq_values: Tuple[float, ...]
    m: int
    n: int
    d: int
    test: TestDescriptor
    alpha: float = 0.05
    mc_reps: int = DESK_MC_REPS

    def __post_init__(self):
        object.__setattr__(self, "mu1_values", tuple(float(v) for v in self.mu1_values))
        object.__setattr__(self, "sigma1_sq_values", tuple(float(v) for v in self.sigma1_sq_values))
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.mc_reps < 1:
            raise ConfigError(f"mc_reps must be at least 1, got {self.mc_reps}")
        if not self.mu1_values or not self.sigma1_sq_values:
            raise ConfigError("power grid needs at least one mu1 and one sigma1^2 value")
        if any(v <= 0 for v in self.sigma1_sq_values):
            raise ConfigError("sigma1^2 values must be positive")
        if min(self.m, self.n, self.d) < 1:
            raise ConfigError(f"m, n and d must be positive (m={self.m}, n={self.n}, d={self.d})")

    def points(self) -> List[Tuple[float, float]]:
        return [(mu1, s2) for mu1 in self.mu1_values for s2 in self.sigma1_sq_values]


def rejection_band(alpha: float, mc_reps: int, level: float = 0.99) -> Tuple[float, float]:
    """Central binomial interval for the rejection rate of a level-alpha test over mc_reps runs."""
    low, high = binom.interval(level, mc_reps, alpha)
    return low / mc_reps, high / mc_reps


def estimate_power(
    f1: DistributionSpec,
    f2: DistributionSpec,
    test: TestDescriptor,
    m: int,
    n: int,
    alpha: float,
    mc_reps: int,
    plan: PermutationPlan,
    mu1: Optional[float] = None,
    sigma1_sq: Optional[float] = None,
) -> PowerEstimate:
    """
    Fraction of ``mc_reps`` independent draws on which ``test`` rejects at ``alpha``.

    Raises:
        ConfigError: If alpha is outside (0, 1), mc_reps < 1 or the dimensions differ
        DiPropermError: A failing repetition, logged with its index
    """
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")
    if mc_reps < 1:
        raise ConfigError(f"mc_reps must be at least 1, got {mc_reps}")
    if f1.d != f2.d:
        raise ConfigError(f"F1 and F2 dimensions differ ({f1.d} vs {f2.d})")

    def repetition(r: int) -> bool:
        rep_rng = plan.rng.child(r)
        sp = SamplePair(
            sample_distribution(f1, m, rep_rng.stream(0)),
            sample_distribution(f2, n, rep_rng.stream(1)),
        )
        inner = replace(plan, rng=rep_rng.child(2), workers=1)
        try:
            return test.rejects(sp, inner, alpha)
        except SolverError as e:
            raise SolverError(f"repetition {r}: {e}", residual=e.residual, iterations=e.iterations) from e
        except DiPropermError as e:
            logger.error(f"Repetition {r} of {test.label} failed: {type(e).__name__}: {e}")
            raise

    decisions = map_ordered(repetition, range(mc_reps), plan.workers)
    estimate = PowerEstimate(
        test=test.label,
        m=m,
        n=n,
        d=f1.d,
        alpha=alpha,
        mc_reps=mc_reps,
        rejections=int(sum(decisions)),
        seed=plan.seed,
        mu1=mu1,
        sigma1_sq=sigma1_sq,
    )
    logger.info(
        f"Power {test.label} (m={m}, n={n}, d={f1.d}, mu1={mu1}, sigma1^2={sigma1_sq}): "
        f"{estimate.rejection_rate:.3f} +/- {estimate.stderr:.3f}"
    )
    return estimate


def power_surface(grid: PowerGrid, plan: PermutationPlan) -> List[PowerEstimate]:
    """Estimate power at every (mu1, sigma1^2) grid point; point i uses ``plan.rng.child(i)``."""
    f2 = DistributionSpec.spherical(grid.d)
    estimates = []
    for index, (mu1, sigma1_sq) in enumerate(grid.points()):
        f1 = DistributionSpec.spherical(grid.d, mean=mu1, variance=sigma1_sq)
        estimates.append(
            estimate_power(
                f1,
                f2,
                grid.test,
                grid.m,
                grid.n,
                grid.alpha,
                grid.mc_reps,
                replace(plan, rng=plan.rng.child(index)),
                mu1=mu1,
                sigma1_sq=sigma1_sq,
            )
        )
    return estimates


def power_by_dimension(
    setting: str,
    dims: Sequence[int],
    test: TestDescriptor,
    m: int,
    n: int,
    alpha: float,
    mc_reps: int,
    plan: PermutationPlan,
) -> List[PowerEstimate]:
    """Power of ``test`` in a named setting (S1, S2, S3, null) across dimensions."""
    estimates = []
    for index, d in enumerate(dims):
        f1, f2 = setting_pair(setting, d, n)
        estimates.append(estimate_power(f1, f2, test, m, n, alpha, mc_reps, replace(plan, rng=plan.rng.child(index))))
    return estimates


def power_table(estimates: Sequence[PowerEstimate]) -> pd.DataFrame:
    """Plot-ready table with the power TSV columns."""
    return pd.DataFrame([e.to_row() for e in estimates], columns=POWER_COLUMNS)
