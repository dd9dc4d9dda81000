"""SVD-based rank and subspace helpers with relative tolerances."""

from __future__ import annotations

import numpy as np

__all__ = ["normalize_columns", "numeric_rank", "range_basis", "complement_basis"]


def normalize_columns(X):
    """Scale every nonzero column to unit norm."""
    X = np.asarray(X, dtype=float)
    norms = np.linalg.norm(X, axis=0)
    norms[norms == 0] = 1.0
    return X / norms


def _threshold(s, shape, rel_tol, scale):
    top = s[0] if scale is None else scale
    return rel_tol * top * max(shape)


def numeric_rank(matrix, rel_tol=1e-9, scale=None):
    """Number of singular values above ``rel_tol * sigma_max * max(rows, cols)``.

    ``scale`` replaces ``sigma_max`` when the matrix is a projection of a
    larger one whose scale should set the threshold.
    """
    A = np.asarray(matrix, dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > _threshold(s, A.shape, rel_tol, scale)))


def range_basis(matrix, rel_tol=1e-9, scale=None):
    """Orthonormal basis of the numerical column space, ``(rows, r)``."""
    A = np.asarray(matrix, dtype=float)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], 0))
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    if s[0] == 0:
        return np.zeros((A.shape[0], 0))
    r = int(np.count_nonzero(s > _threshold(s, A.shape, rel_tol, scale)))
    return U[:, :r]


def complement_basis(matrix, rel_tol=1e-9):
    """Orthonormal basis of the orthogonal complement of the column space."""
    A = np.asarray(matrix, dtype=float)
    rows = A.shape[0]
    if A.shape[1] == 0:
        return np.eye(rows)
    U, s, _ = np.linalg.svd(A, full_matrices=True)
    r = 0 if s[0] == 0 else int(np.count_nonzero(s > _threshold(s, A.shape, rel_tol, None)))
    return U[:, r:]
