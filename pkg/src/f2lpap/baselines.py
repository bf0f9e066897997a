"""Training-free comparison methods and the shared method dispatcher."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .classify import Prediction, assign_labels, cosine_scores, f2lp_predict
from .datasets import Dataset, Labels
from .graph import NormalizedAdjacency, normalize_adjacency
from .prototypes import WeiszfeldConfig, build_prototypes
from .propagation import KernelConfig, fixed_propagate
from .validation import ConfigurationError, check_mask, check_train_classes

logger = logging.getLogger(__name__)

METHODS = ("f2lp", "fixed_appnp_proto", "proto_geomed", "proto_mean", "labelprop", "knn5")


@dataclass(frozen=True)
class RunConfig:
    """Per-method knobs for the dispatcher; defaults follow the benchmark setup."""

    kernel: KernelConfig = field(default_factory=KernelConfig)
    weiszfeld: WeiszfeldConfig = field(default_factory=WeiszfeldConfig)
    fixed_k: int = 5
    fixed_alpha: float = 0.1
    lp_max_iters: int = 100
    lp_tol: float = 1e-6
    knn_k: int = 5


def label_propagation(
    a_norm: NormalizedAdjacency, labels: Labels, train_mask, max_iters=100, tol=1e-6
) -> Prediction:
    """Diffuse one-hot training labels over the graph, clamping known rows.

    Iterates ``Y <- A_norm @ Y`` then resets training rows to their one-hot
    labels; stops when the largest entry change falls below ``tol`` or after
    ``max_iters``. Prediction is the per-row argmax, ties to the lowest class.
    """
    n = a_norm.num_nodes
    train_mask = check_mask(train_mask, n) & (labels.y >= 0)
    check_train_classes(labels.y, train_mask, labels.num_classes)

    clamp = np.zeros((n, labels.num_classes), dtype=np.float64)
    train_idx = np.flatnonzero(train_mask)
    clamp[train_idx, labels.y[train_idx]] = 1.0
    y_mat = clamp.copy()
    for _ in range(max_iters):
        nxt = a_norm.matrix @ y_mat
        nxt[train_idx] = clamp[train_idx]
        delta = float(np.abs(nxt - y_mat).max())
        y_mat = nxt
        if delta < tol:
            break
    return assign_labels(y_mat)


def knn_classify(X, labels: Labels, train_mask, k=5, metric="cosine") -> Prediction:
    """Majority vote over the k nearest training nodes by cosine distance.

    Distance ties break toward the lower training-node index, vote ties toward
    the lowest class index. ``k`` larger than the training set is clamped with
    a warning.
    """
    if metric != "cosine":
        raise ConfigurationError(f"unsupported kNN metric: {metric!r}")
    if k < 1:
        raise ConfigurationError("k must be >= 1")
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    train_mask = check_mask(train_mask, n) & (labels.y >= 0)
    train_idx = np.flatnonzero(train_mask)
    if train_idx.size == 0:
        raise ValueError("training set is empty")
    if k > train_idx.size:
        logger.warning("k=%d exceeds %d training nodes; clamping", k, train_idx.size)
        k = train_idx.size

    norms = np.linalg.norm(X, axis=1)
    safe = np.where(norms < 1e-12, 1.0, norms)
    unit = X / safe[:, None]
    unit[norms < 1e-12] = 0.0
    sims = unit @ unit[train_idx].T  # zero-norm rows score 0 by convention
    dists = 1.0 - sims

    y_train = labels.y[train_idx]
    out = np.empty(n, dtype=np.int64)
    tie_count = 0
    for i in range(n):
        order = np.lexsort((train_idx, dists[i]))[:k]
        votes = np.bincount(y_train[order], minlength=labels.num_classes)
        out[i] = int(votes.argmax())
        if np.count_nonzero(votes == votes[out[i]]) > 1:
            tie_count += 1
    return Prediction(labels=out, tie_count=tie_count)


def run_method(ds: Dataset, method, config: RunConfig | None = None):
    """Dispatch a named method; returns (Prediction, inference wall time in s).

    Timing covers the full inference path (normalization included) but not
    dataset loading.
    """
    config = config or RunConfig()
    if method not in METHODS:
        raise ConfigurationError(f"unknown method: {method!r} (choose from {METHODS})")

    start = time.perf_counter()
    if method == "f2lp":
        pred = f2lp_predict(ds, config.kernel, config.weiszfeld).prediction
    elif method in ("fixed_appnp_proto", "proto_geomed", "proto_mean"):
        proto_method = "mean" if method == "proto_mean" else "geometric_median"
        prototypes = build_prototypes(
            ds.features, ds.labels, ds.split.train, method=proto_method, cfg=config.weiszfeld
        )
        if method == "fixed_appnp_proto":
            a_norm = normalize_adjacency(ds.graph)
            x_hat = fixed_propagate(a_norm, ds.features, config.fixed_k, config.fixed_alpha)
        else:
            x_hat = ds.features
        pred = assign_labels(cosine_scores(x_hat, prototypes))
    elif method == "labelprop":
        a_norm = normalize_adjacency(ds.graph)
        pred = label_propagation(
            a_norm, ds.labels, ds.split.train, config.lp_max_iters, config.lp_tol
        )
    else:  # knn5
        pred = knn_classify(ds.features, ds.labels, ds.split.train, k=config.knn_k)
    elapsed = time.perf_counter() - start
    return pred, elapsed
