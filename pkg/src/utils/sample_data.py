"""Utility module for generating sample two-group datasets."""

import pandas as pd

from src.data.rng import RngPolicy
from src.simulation.distributions import sample_distribution, setting_pair

LABEL_COLUMN = "label"


def get_sample_dataset(
    setting: str = "S1",
    d: int = 20,
    m: int = 10,
    n: int = 10,
    seed: int = 0,
    labels: tuple = ("F1", "F2"),
) -> pd.DataFrame:
    """Generate a labelled dataset for testing and demonstration.

    Rows of the first group come from F1 of the named setting (drawn from
    stream 0 of the seed), rows of the second group from F2 (stream 1).

    Args:
        setting: S1, S2, S3 or null
        d: Number of features
        m: Rows in the first group
        n: Rows in the second group
        seed: Master seed
        labels: Label values of the two groups

    Returns:
        DataFrame with a ``label`` column followed by features f1..fd
    """
    f1, f2 = setting_pair(setting, d, n)
    policy = RngPolicy(seed)
    columns = [f"f{j + 1}" for j in range(d)]
    first = pd.DataFrame(sample_distribution(f1, m, policy.stream(0)), columns=columns)
    second = pd.DataFrame(sample_distribution(f2, n, policy.stream(1)), columns=columns)
    first.insert(0, LABEL_COLUMN, labels[0])
    second.insert(0, LABEL_COLUMN, labels[1])
    return pd.concat([first, second], ignore_index=True)
