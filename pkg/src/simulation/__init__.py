"""Synthetic settings and Monte Carlo size/power studies."""

from src.simulation.diagnostics import expected_pair_distance, mean_pair_distance, scaling_diagnostic
from src.simulation.distributions import (
    DistributionKind,
    DistributionSpec,
    MixtureComponent,
    block_covariance,
    s2_mean_vector,
    sample_distribution,
    setting_pair,
)
from src.simulation.power import (
    BaselineKind,
    PowerEstimate,
    PowerGrid,
    TestDescriptor,
    estimate_power,
    power_by_dimension,
    power_surface,
    power_table,
    rejection_band,
)

__all__ = [
    "BaselineKind",
    "DistributionKind",
    "DistributionSpec",
    "MixtureComponent",
    "PowerEstimate",
    "PowerGrid",
    "TestDescriptor",
    "block_covariance",
    "estimate_power",
    "expected_pair_distance",
    "mean_pair_distance",
    "power_by_dimension",
    "power_surface",
    "power_table",
    "rejection_band",
    "s2_mean_vector",
    "sample_distribution",
    "scaling_diagnostic",
    "setting_pair",
]
