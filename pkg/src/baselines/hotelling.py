"""Classical two-sample Hotelling T^2 test with its F conversion."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy import linalg as sla
from scipy import stats

from src.data.samples import SamplePair
from src.directions.base import within_centered
from src.directions.linalg import numerical_rtol
from src.errors import SingularCovariance
from src.permutation.results import json_number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HotellingResult:
    """T^2, its F transform F = T^2 (N - k - 1) / (k (N - 2)) and the F(k, N - k - 1) p-value."""

    t2: float
    f_stat: float
    df1: int
    df2: int
    p_value: float
    method: str = "hotelling"
    seed: Optional[int] = None

    def reject(self, alpha: float) -> bool:
        return self.p_value < alpha

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "stat": "T2",
            "observed": json_number(self.t2),
            "f_stat": json_number(self.f_stat),
            "df1": self.df1,
            "df2": self.df2,
            "p_value": self.p_value,
            "seed": self.seed,
        }


def hotelling_t2(sp: SamplePair, method: str = "hotelling", seed: Optional[int] = None) -> HotellingResult:
    """
    Two-sample Hotelling T^2 = (mn/N) (X-bar - Y-bar)^T S_u^{-1} (X-bar - Y-bar), S_u = W / (N - 2).

    Args:
        sp: Two-sample data with d <= N - 2
        method: Tag recorded on the result
        seed: Seed recorded on the result (random-projection variant)

    Raises:
        SingularCovariance: If d > N - 2 or S_u is numerically singular
    """
    n_total, k = sp.total, sp.d
    if k > n_total - 2:
        raise SingularCovariance(f"Hotelling T^2 needs d <= N - 2 (d={k}, N={n_total})")
    centered = within_centered(sp)
    pooled_cov = centered.T @ centered / (n_total - 2)
    singular_values = np.linalg.svd(pooled_cov, compute_uv=False)
    if singular_values[0] == 0.0 or singular_values[-1] <= numerical_rtol(k, n_total) * singular_values[0]:
        raise SingularCovariance("pooled covariance S_u is singular")

    delta = sp.mean_difference()
    t2 = float(sp.m * sp.n / n_total * delta @ sla.solve(pooled_cov, delta, assume_a="sym"))
    df1, df2 = k, n_total - k - 1
    f_stat = t2 * df2 / (k * (n_total - 2))
    p_value = float(stats.f.sf(f_stat, df1, df2))
    logger.debug(f"{method}: T2={t2:.6g}, F={f_stat:.6g} on ({df1}, {df2}) df, p={p_value:.4g}")
    return HotellingResult(t2=t2, f_stat=f_stat, df1=df1, df2=df2, p_value=p_value, method=method, seed=seed)
