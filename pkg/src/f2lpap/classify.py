"""Cosine-prototype scoring, hard label assignment, and the end-to-end pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .datasets import Dataset
from .graph import compute_lcc, normalize_adjacency
from .prototypes import PrototypeSet, WeiszfeldConfig, build_prototypes
from .propagation import KernelConfig, PropagationParams, adaptive_propagate, map_lcc_to_params

ZERO_NORM_EPS = 1e-12


@dataclass(frozen=True)
class Prediction:
    """Per-node class assignments; ``tie_count`` counts rows whose argmax tied."""

    labels: np.ndarray
    tie_count: int


@dataclass(frozen=True)
class F2LPResult:
    """All pipeline intermediates, for inspection and reporting."""

    prediction: Prediction
    scores: np.ndarray = field(repr=False)
    propagation: PropagationParams
    prototypes: PrototypeSet
    lcc: np.ndarray = field(repr=False)
    features_propagated: np.ndarray = field(repr=False)


def _unit_rows(m) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1, keepdims=True)
    safe = np.where(norms < ZERO_NORM_EPS, 1.0, norms)
    out = m / safe
    out[norms.ravel() < ZERO_NORM_EPS] = 0.0
    return out


def cosine_scores(features, prototypes: PrototypeSet) -> np.ndarray:
    """n x C matrix of cosine similarities against the class prototypes.

    Rows or prototypes with norm below 1e-12 contribute a score of exactly 0.
    """
    features = np.asarray(features, dtype=np.float64)
    if features.shape[1] != prototypes.matrix.shape[1]:
        raise ValueError(
            f"feature dimension {features.shape[1]} does not match "
            f"prototype dimension {prototypes.matrix.shape[1]}"
        )
    return _unit_rows(features) @ _unit_rows(prototypes.matrix).T


def assign_labels(scores) -> Prediction:
    """Row-wise argmax over classes; ties go to the lowest class index."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 2 or scores.shape[1] < 1:
        raise ValueError("scores must be an n x C matrix with C >= 1")
    labels = scores.argmax(axis=1).astype(np.int64)
    row_max = scores[np.arange(scores.shape[0]), labels]
    tie_count = int(((scores == row_max[:, None]).sum(axis=1) > 1).sum())
    return Prediction(labels=labels, tie_count=tie_count)


def f2lp_predict(
    ds: Dataset,
    kernel: KernelConfig | None = None,
    weiszfeld: WeiszfeldConfig | None = None,
    prototype_method: str = "geometric_median",
) -> F2LPResult:
    """Run the full training-free pipeline on a dataset.

    Stages, in order: robust prototypes over the raw training features;
    clustering coefficients mapped to per-node propagation parameters followed
    by adaptive propagation; cosine scoring and hard assignment. Prototypes
    deliberately come from raw features while nodes are scored on propagated
    ones.
    """
    kernel = kernel or KernelConfig()
    ds.validate()
    prototypes = build_prototypes(
        ds.features, ds.labels, ds.split.train, method=prototype_method, cfg=weiszfeld
    )
    lcc = compute_lcc(ds.graph)
    params = map_lcc_to_params(lcc, kernel)
    a_norm = normalize_adjacency(ds.graph)
    x_hat = adaptive_propagate(a_norm, ds.features, params)
    scores = cosine_scores(x_hat, prototypes)
    prediction = assign_labels(scores)
    return F2LPResult(
        prediction=prediction,
        scores=scores,
        propagation=params,
        prototypes=prototypes,
        lcc=lcc,
        features_propagated=x_hat,
    )
