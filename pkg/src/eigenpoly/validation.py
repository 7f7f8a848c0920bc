"""Input validation shared by the estimator layer."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .graphs import Graph


def check_adjacency(A) -> Graph:
    """Accept a Graph or a square symmetric 0/1 matrix with zero diagonal."""
    if isinstance(A, Graph):
        return A
    M = check_array(A, dtype=float, ensure_2d=True, accept_sparse=False)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ValueError("adjacency matrix must be symmetric")
    if not np.all((M == 0) | (M == 1)):
        raise ValueError("adjacency matrix must have 0/1 entries")
    if np.any(np.diag(M) != 0):
        raise ValueError("adjacency matrix must have a zero diagonal (no loops)")
    return Graph.from_adjacency(M)


def check_points(X, min_points: int = 1) -> np.ndarray:
    """Finite float matrix with one point per row."""
    return check_array(X, dtype=float, ensure_2d=True, ensure_min_samples=min_points,
                       ensure_all_finite=True)
