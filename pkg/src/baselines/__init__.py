"""Reference two-sample tests: energy distance, Hotelling T^2 and its random-projection variant."""

from src.baselines.energy import EnergyResult, energy_statistic, energy_test
from src.baselines.hotelling import HotellingResult, hotelling_t2
from src.baselines.random_projection import RPConfig, rp_test

__all__ = [
    "EnergyResult",
    "HotellingResult",
    "RPConfig",
    "energy_statistic",
    "energy_test",
    "hotelling_t2",
    "rp_test",
]
