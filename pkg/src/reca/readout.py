"""Linear readout: least-squares fit with intercept, prediction, binarization.

Feature bits enter the regression as 0.0/1.0. The solve goes through the
normal equations with a tiny ridge term (1e-8 times the mean squared column
norm of the design matrix, intercept column included) so that the very
common rank-deficient case, e.g. constant CA columns, stays solvable while
well-conditioned solutions are perturbed far below test tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

RIDGE_SCALE = 1e-8


@dataclass(frozen=True, eq=False)
class ReadoutModel:
    """Affine readout weights; the last row of ``weights`` is the intercept."""

    weights: np.ndarray  # shape (feature_length + 1, output_width), float64

    @property
    def feature_length(self) -> int:
        return self.weights.shape[0] - 1

    @property
    def output_width(self) -> int:
        return self.weights.shape[1]


def fit(features: np.ndarray, targets: np.ndarray, ridge: float = RIDGE_SCALE) -> ReadoutModel:
    """Least-squares fit of an affine map from feature rows to target rows.

    Args:
        features: (N, p) binary matrix.
        targets: (N, k) binary matrix.
        ridge: relative ridge strength added to the normal-equation diagonal.

    Gram accumulation runs in float32: features are 0/1, so every entry of
    X^T X is an integer count <= N, exact in float32 for N < 2^24. The solve
    itself is float64.
    """
    x = np.asarray(features)
    y = np.asarray(targets)
    if x.ndim != 2 or y.ndim != 2:
        raise ValueError("features and targets must be 2-D")
    if x.shape[0] != y.shape[0]:
        raise ValueError("features and targets must have the same row count")
    if x.shape[0] < 1:
        raise ValueError("at least one training row is required")

    n, p = x.shape
    xf = np.ascontiguousarray(x, dtype=np.float32)
    yf = np.ascontiguousarray(y, dtype=np.float32)

    gram = scipy.linalg.blas.ssyrk(1.0, xf, trans=1)  # upper triangle of X^T X
    gram = gram + np.triu(gram, 1).T
    col_sums = xf.sum(axis=0)

    a = np.empty((p + 1, p + 1), dtype=np.float64)
    a[:p, :p] = gram
    a[:p, p] = col_sums
    a[p, :p] = col_sums
    a[p, p] = n

    b = np.empty((p + 1, y.shape[1]), dtype=np.float64)
    b[:p] = xf.T @ yf
    b[p] = yf.sum(axis=0)

    alpha = ridge * np.trace(a) / (p + 1)
    a[np.diag_indices_from(a)] += alpha

    cho = scipy.linalg.cho_factor(a, lower=False, check_finite=False)
    weights = scipy.linalg.cho_solve(cho, b, check_finite=False)
    return ReadoutModel(weights)


def predict(model: ReadoutModel, features: np.ndarray) -> np.ndarray:
    """Affine map of one feature vector or a batch of feature rows."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim == 1:
        x = x[None]
        squeeze = True
    elif x.ndim == 2:
        squeeze = False
    else:
        raise ValueError("features must be 1-D or 2-D")
    if x.shape[1] != model.feature_length:
        raise ValueError(
            f"feature length {x.shape[1]} does not match model "
            f"({model.feature_length})"
        )
    out = x @ model.weights[:-1] + model.weights[-1]
    return out[0] if squeeze else out


def binarize(value: float) -> int:
    """Threshold one regression output: 0 below 0.5, 1 at or above it."""
    if not np.isfinite(value):
        raise ValueError(f"cannot binarize non-finite value {value!r}")
    return 0 if value < 0.5 else 1


def binarize_array(values: np.ndarray) -> np.ndarray:
    """Elementwise binarize; rejects non-finite entries."""
    v = np.asarray(values)
    if not np.all(np.isfinite(v)):
        raise ValueError("cannot binarize non-finite values")
    return (v >= 0.5).astype(np.uint8)
