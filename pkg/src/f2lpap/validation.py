"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

UNLABELED = -1


class ConfigurationError(ValueError):
    """Invalid configuration or method/parameter combination."""


class DatasetFormatError(ValueError):
    """Malformed or inconsistent on-disk dataset."""


def check_features(X, *, num_nodes=None) -> np.ndarray:
    """Coerce to a dense float64 (n, d) matrix with finite entries."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("feature matrix contains non-finite entries")
    if num_nodes is not None and X.shape[0] != num_nodes:
        raise ValueError(
            f"feature matrix has {X.shape[0]} rows, expected {num_nodes}"
        )
    return X


def check_labels(y, num_classes, *, num_nodes=None, allow_unlabeled=True) -> np.ndarray:
    """Coerce to an int64 label vector; UNLABELED (-1) marks unlabeled nodes."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"label vector must be 1-D, got shape {y.shape}")
    if not np.issubdtype(y.dtype, np.integer):
        y_float = np.asarray(y, dtype=np.float64)
        if not np.all(y_float == np.round(y_float)):
            raise ValueError("labels must be integers")
        y = y_float.astype(np.int64)
    else:
        y = y.astype(np.int64)
    if num_nodes is not None and y.shape[0] != num_nodes:
        raise ValueError(f"label vector has length {y.shape[0]}, expected {num_nodes}")
    if num_classes < 1:
        raise ValueError("num_classes must be >= 1")
    if np.any(y >= num_classes):
        bad = int(y[y >= num_classes][0])
        raise ValueError(f"class id {bad} out of range for {num_classes} classes")
    low = UNLABELED if allow_unlabeled else 0
    if np.any(y < low):
        raise ValueError(f"labels must be >= {low}")
    return y


def check_mask(mask, num_nodes) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (num_nodes,):
        raise ValueError(f"mask must have shape ({num_nodes},), got {mask.shape}")
    return mask


def check_train_classes(y, train_mask, num_classes) -> None:
    """Every class must have at least one labeled training node."""
    seen = np.unique(y[train_mask & (y >= 0)])
    missing = sorted(set(range(num_classes)) - set(int(c) for c in seen))
    if missing:
        raise ValueError(f"empty training class: {missing}")


def check_probability(p, name) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0 or not np.isfinite(p):
        raise ValueError(f"{name} must be in [0, 1], got {p}")
    return p
