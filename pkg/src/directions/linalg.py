"""
Pseudoinverse helpers for rank-deficient (HDLSS) scatter matrices.
"""

from typing import Tuple

import numpy as np


def numerical_rtol(d: int, n_total: int) -> float:
    """Relative cutoff for singular values of a scatter matrix: 1e-10 * max(d, N)."""
    return 1e-10 * max(d, n_total)


def pseudo_inverse(matrix: np.ndarray, rtol: float) -> np.ndarray:
    """
    Moore-Penrose pseudoinverse via SVD.

    Parameters
    ----------
    matrix : (p, q) ndarray
    rtol : float
        Singular values below ``rtol * max(s)`` are treated as zero.
    """
    u, s, vt = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(matrix.T.shape)
    inverse = np.where(s >= rtol * s[0], 1.0 / np.where(s > 0, s, 1.0), 0.0)
    return (vt.T * inverse) @ u.T


def gram_pinv_apply(rows: np.ndarray, vector: np.ndarray, rtol: float) -> Tuple[np.ndarray, float]:
    """
    Apply the pseudoinverse of M = rows^T rows to ``vector`` without forming M.

    With the thin SVD rows = U diag(s) V^T the eigenvalues of M are s^2, so
    M^+ = V diag(1/s^2) V^T restricted to the kept eigenvalues s^2 >= rtol * s_max^2.

    Returns
    -------
    (result, largest eigenvalue of M)
    """
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(rows.shape[1]), 0.0
    eig = s**2
    keep = eig >= rtol * eig[0]
    basis = vt[keep]
    coords = basis @ vector
    return basis.T @ (coords / eig[keep]), float(eig[0])
