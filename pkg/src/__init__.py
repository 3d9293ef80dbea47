"""
diproperm: Direction-Projection-Permutation two-sample tests for high-dimensional data.
"""

__version__ = "0.1.0"
