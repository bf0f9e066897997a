"""Robust class prototypes: geometric median via Weiszfeld iteration, and the mean."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import check_features, check_mask, check_train_classes


@dataclass(frozen=True)
class WeiszfeldConfig:
    """Stopping rule and singularity guard for the geometric-median iteration.

    ``tolerance`` bounds the iterate displacement between steps;
    ``singularity_epsilon`` clamps the inverse-distance weight when the iterate
    lands (numerically) on a data point.
    """

    tolerance: float = 1e-6
    max_iterations: int = 100
    singularity_epsilon: float = 1e-12

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.singularity_epsilon <= 0:
            raise ValueError("singularity_epsilon must be > 0")


@dataclass(frozen=True)
class WeiszfeldTrace:
    """Per-iteration record of one geometric-median solve."""

    median: np.ndarray
    iterations: int
    objectives: np.ndarray  # objective after each iterate, initial point included
    weight_sums: np.ndarray  # normalized weight totals, one per update


@dataclass(frozen=True)
class PrototypeSet:
    """C x d matrix of class prototypes plus construction metadata."""

    matrix: np.ndarray = field(repr=False)
    method: str
    support: np.ndarray
    iterations: np.ndarray | None = None

    @property
    def num_classes(self) -> int:
        return self.matrix.shape[0]


def distance_sum(points, mu) -> float:
    """Sum of Euclidean distances from ``mu`` to each row of ``points``."""
    return float(np.linalg.norm(points - mu, axis=1).sum())


def geometric_median_trace(points, cfg: WeiszfeldConfig | None = None) -> WeiszfeldTrace:
    """Weiszfeld iteration with full diagnostics.

    Starts from the arithmetic mean and applies the inverse-distance reweighted
    average until the iterate moves less than ``cfg.tolerance`` or
    ``cfg.max_iterations`` is hit. Point sets of size 1 and 2 short-circuit to
    the point / the midpoint. Each iteration costs O(m * d) for m points in d
    dimensions.
    """
    cfg = cfg or WeiszfeldConfig()
    points = check_features(points)
    m = points.shape[0]
    if m == 0:
        raise ValueError("need at least one point")
    if m == 1:
        mu = points[0].copy()
        return WeiszfeldTrace(mu, 0, np.array([0.0]), np.empty(0))
    if m == 2:
        mu = points.mean(axis=0)
        return WeiszfeldTrace(mu, 0, np.array([distance_sum(points, mu)]), np.empty(0))

    mu = points.mean(axis=0)
    objectives = [distance_sum(points, mu)]
    weight_sums = []
    iterations = 0
    for _ in range(cfg.max_iterations):
        dist = np.linalg.norm(points - mu, axis=1)
        inv = 1.0 / np.maximum(dist, cfg.singularity_epsilon)
        w = inv / inv.sum()
        weight_sums.append(float(w.sum()))
        nxt = w @ points
        iterations += 1
        step = float(np.linalg.norm(nxt - mu))
        mu = nxt
        objectives.append(distance_sum(points, mu))
        if step < cfg.tolerance:
            break
    return WeiszfeldTrace(mu, iterations, np.asarray(objectives), np.asarray(weight_sums))


def geometric_median(points, cfg: WeiszfeldConfig | None = None) -> np.ndarray:
    """Point minimizing the sum of Euclidean distances to the rows of ``points``."""
    return geometric_median_trace(points, cfg).median


def mean_prototype(points) -> np.ndarray:
    """Arithmetic mean per dimension."""
    points = check_features(points)
    if points.shape[0] == 0:
        raise ValueError("need at least one point")
    return points.mean(axis=0)


def build_prototypes(
    features,
    labels,
    train_mask,
    method="geometric_median",
    cfg: WeiszfeldConfig | None = None,
) -> PrototypeSet:
    """One prototype per class over its raw training features.

    ``labels`` is a :class:`~f2lpap.datasets.Labels`; only training-mask rows
    contribute. Raw (pre-propagation) features are the intended input.
    """
    if method not in ("geometric_median", "mean"):
        raise ValueError(f"unknown prototype method: {method!r}")
    X = check_features(features)
    train_mask = check_mask(train_mask, X.shape[0])
    y = labels.y
    c_count = labels.num_classes
    check_train_classes(y, train_mask, c_count)

    matrix = np.empty((c_count, X.shape[1]), dtype=np.float64)
    support = np.empty(c_count, dtype=np.int64)
    iterations = np.zeros(c_count, dtype=np.int64) if method == "geometric_median" else None
    for c in range(c_count):
        rows = X[train_mask & (y == c)]
        support[c] = rows.shape[0]
        if method == "mean":
            matrix[c] = mean_prototype(rows)
        else:
            trace = geometric_median_trace(rows, cfg)
            matrix[c] = trace.median
            iterations[c] = trace.iterations
    return PrototypeSet(matrix=matrix, method=method, support=support, iterations=iterations)
