"""
Distribution descriptions and samplers for the simulation settings.

Samples are stored with shape (count, d): rows are observations.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from src.errors import SpecError

MeanSpec = Union[float, Sequence[float], np.ndarray]

BLOCK_SIZE = 5
BLOCK_RHO = 0.2
T_DEGREES_OF_FREEDOM = 5


class DistributionKind(str, Enum):
    SPHERICAL_GAUSSIAN = "spherical-gaussian"
    IID_T5 = "iid-t5"
    BLOCK_GAUSSIAN = "block-gaussian"
    GAUSSIAN_MIXTURE = "gaussian-mixture"


def _mean_vector(mean: MeanSpec, d: int) -> np.ndarray:
    values = np.asarray(mean, dtype=float)
    if values.ndim == 0:
        return np.full(d, float(values))
    if values.shape != (d,):
        raise SpecError(f"mean vector must have length d={d}, got shape {values.shape}")
    return values.copy()


@dataclass(frozen=True, eq=False)
class MixtureComponent:
    """One spherical Gaussian component: weight, mean (scalar fill or vector) and variance."""

    weight: float
    mean: MeanSpec
    variance: float = 1.0


@dataclass(frozen=True, eq=False)
class DistributionSpec:
    """
    A d-dimensional law from which iid rows are drawn.

    Args:
        kind: Family of the law
        d: Dimension
        mean: Scalar fill or length-d vector (Gaussian kinds)
        variance: Spherical variance sigma^2 (spherical Gaussian)
        components: Mixture components (Gaussian mixture)
    """

    kind: DistributionKind
    d: int
    mean: MeanSpec = 0.0
    variance: float = 1.0
    components: Tuple[MixtureComponent, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", DistributionKind(self.kind))
        if int(self.d) < 1:
            raise SpecError(f"dimension must be positive, got {self.d}")
        if not self.variance > 0:
            raise SpecError(f"variance must be positive, got {self.variance}")
        _mean_vector(self.mean, self.d)
        if self.kind is DistributionKind.BLOCK_GAUSSIAN and self.d % BLOCK_SIZE != 0:
            raise SpecError(f"block Gaussian needs d divisible by {BLOCK_SIZE}, got d={self.d}")
        if self.kind is DistributionKind.GAUSSIAN_MIXTURE:
            if not self.components:
                raise SpecError("a mixture needs at least one component")
            weights = np.array([c.weight for c in self.components], dtype=float)
            if np.any(weights < 0) or not math.isclose(weights.sum(), 1.0, abs_tol=1e-9):
                raise SpecError(f"mixture weights must be non-negative and sum to 1, got {weights.tolist()}")
            for component in self.components:
                if not component.variance > 0:
                    raise SpecError(f"component variance must be positive, got {component.variance}")
                _mean_vector(component.mean, self.d)

    @classmethod
    def spherical(cls, d: int, mean: MeanSpec = 0.0, variance: float = 1.0) -> "DistributionSpec":
        return cls(DistributionKind.SPHERICAL_GAUSSIAN, d, mean=mean, variance=variance)

    @classmethod
    def iid_t5(cls, d: int) -> "DistributionSpec":
        return cls(DistributionKind.IID_T5, d)

    @classmethod
    def block_gaussian(cls, d: int, mean: MeanSpec = 0.0) -> "DistributionSpec":
        return cls(DistributionKind.BLOCK_GAUSSIAN, d, mean=mean)

    @classmethod
    def mixture(cls, d: int, components: Sequence[MixtureComponent]) -> "DistributionSpec":
        return cls(DistributionKind.GAUSSIAN_MIXTURE, d, components=tuple(components))

    def mean_vector(self) -> np.ndarray:
        """Population mean (the weighted component means for a mixture)."""
        if self.kind is DistributionKind.GAUSSIAN_MIXTURE:
            return sum(c.weight * _mean_vector(c.mean, self.d) for c in self.components)
        if self.kind is DistributionKind.IID_T5:
            return np.zeros(self.d)
        return _mean_vector(self.mean, self.d)


def block_covariance(size: int = BLOCK_SIZE, rho: float = BLOCK_RHO) -> np.ndarray:
    """size x size block with unit diagonal and constant off-diagonal rho."""
    return (1.0 - rho) * np.eye(size) + rho * np.ones((size, size))


def sample_distribution(spec: DistributionSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw ``count`` iid rows from ``spec``.

    Args:
        spec: Distribution description
        count: Number of rows
        rng: Generator (one stream per sample keeps draws reproducible)

    Returns:
        (count, d) array
    """
    if count < 1:
        raise SpecError(f"count must be positive, got {count}")
    d = spec.d
    if spec.kind is DistributionKind.SPHERICAL_GAUSSIAN:
        return _mean_vector(spec.mean, d) + np.sqrt(spec.variance) * rng.standard_normal((count, d))
    if spec.kind is DistributionKind.IID_T5:
        # marginal variance 5/3 is kept, not standardized
        return rng.standard_t(T_DEGREES_OF_FREEDOM, size=(count, d))
    if spec.kind is DistributionKind.BLOCK_GAUSSIAN:
        chol = np.linalg.cholesky(block_covariance())
        noise = rng.standard_normal((count, d // BLOCK_SIZE, BLOCK_SIZE)) @ chol.T
        return _mean_vector(spec.mean, d) + noise.reshape(count, d)

    weights = np.array([c.weight for c in spec.components], dtype=float)
    means = np.vstack([_mean_vector(c.mean, d) for c in spec.components])
    scales = np.sqrt([c.variance for c in spec.components])
    chosen = rng.choice(len(spec.components), size=count, p=weights / weights.sum())
    return means[chosen] + scales[chosen, None] * rng.standard_normal((count, d))


def s2_mean_vector(d: int, n: int) -> np.ndarray:
    """First ceil(d/4) coordinates zero, the rest 1/sqrt(n)."""
    if d < 1 or n < 1:
        raise SpecError(f"d and n must be positive, got d={d}, n={n}")
    mean = np.full(d, 1.0 / np.sqrt(n))
    mean[: math.ceil(d / 4)] = 0.0
    return mean


def _mixture_mean(d: int, first: float, second: float) -> np.ndarray:
    mean = np.zeros(d)
    mean[0], mean[1] = first, second
    return mean


def setting_pair(name: str, d: int, n: int) -> Tuple[DistributionSpec, DistributionSpec]:
    """
    The (F1, F2) pair of a named simulation setting.

    - ``S1``: N(0, I_d) vs iid t(5) marginals (equal means, different distributions)
    - ``S2``: N(0, Sigma_B) vs N(mu, Sigma_B), Sigma_B block diagonal, mu from :func:`s2_mean_vector`
    - ``S3``: equal-weight two-component mixtures with means (+/-3, +/-30, 0, ..., 0), identity covariance
    - ``null``: N(0, I_d) vs N(0, I_d)

    Args:
        name: Setting name (case-insensitive)
        d: Dimension
        n: Sample size driving the S2 mean shift
    """
    key = name.strip().upper()
    if key == "S1":
        return DistributionSpec.spherical(d), DistributionSpec.iid_t5(d)
    if key == "S2":
        return DistributionSpec.block_gaussian(d), DistributionSpec.block_gaussian(d, mean=s2_mean_vector(d, n))
    if key == "S3":
        if d < 2:
            raise SpecError("setting S3 needs d >= 2")
        f1 = DistributionSpec.mixture(
            d,
            [MixtureComponent(0.5, _mixture_mean(d, 3.0, 30.0)), MixtureComponent(0.5, _mixture_mean(d, 3.0, -30.0))],
        )
        f2 = DistributionSpec.mixture(
            d,
            [MixtureComponent(0.5, _mixture_mean(d, -3.0, 30.0)), MixtureComponent(0.5, _mixture_mean(d, -3.0, -30.0))],
        )
        return f1, f2
    if key == "NULL":
        return DistributionSpec.spherical(d), DistributionSpec.spherical(d)
    raise SpecError(f"unknown setting {name!r}; expected S1, S2, S3 or null")
