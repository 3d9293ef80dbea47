from src.data.loader import DatasetLoader, load_dataset
from src.data.rng import RngPolicy
from src.data.samples import PooledSample, SamplePair, pool, unpool

__all__ = [
    "DatasetLoader",
    "PooledSample",
    "RngPolicy",
    "SamplePair",
    "load_dataset",
    "pool",
    "unpool",
]
