"""LCC-to-parameter mapping and node-wise adaptive feature propagation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import NormalizedAdjacency
from .validation import check_features


@dataclass(frozen=True)
class KernelConfig:
    """Ranges for the per-node teleport probability and propagation depth.

    ``linear_complement`` maps high local clustering to the low end of both
    ranges: dense, closed neighborhoods get shallow, strongly smoothed
    propagation while sparse ones get deep propagation that retains the node's
    own features.
    """

    k_min: int = 3
    k_max: int = 15
    alpha_min: float = 0.1
    alpha_max: float = 0.2
    mapping: str = "linear_complement"

    def __post_init__(self):
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError(f"need 1 <= k_min <= k_max, got {self.k_min}, {self.k_max}")
        if not 0 < self.alpha_min <= self.alpha_max < 1:
            raise ValueError(
                f"need 0 < alpha_min <= alpha_max < 1, got {self.alpha_min}, {self.alpha_max}"
            )
        if self.mapping != "linear_complement":
            raise ValueError(f"unknown mapping: {self.mapping!r}")


@dataclass(frozen=True)
class PropagationParams:
    """Per-node teleport probabilities and propagation depths."""

    alpha: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=np.float64)
        k = np.asarray(self.k, dtype=np.int64)
        if alpha.shape != k.shape or alpha.ndim != 1:
            raise ValueError("alpha and k must be 1-D arrays of equal length")
        if np.any((alpha <= 0) | (alpha > 1)):
            raise ValueError("alpha values must lie in (0, 1]")
        if np.any(k < 0):
            raise ValueError("depths must be >= 0")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "k", k)

    @classmethod
    def constant(cls, num_nodes, alpha, k) -> "PropagationParams":
        return cls(np.full(num_nodes, float(alpha)), np.full(num_nodes, int(k)))

    @property
    def num_nodes(self) -> int:
        return self.alpha.shape[0]


def _round_half_away(x) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def map_lcc_to_params(lcc, cfg: KernelConfig) -> PropagationParams:
    """Map clustering coefficients to (alpha, K) via the linear-complement rule.

    alpha_i = alpha_min + (1 - LCC_i) * (alpha_max - alpha_min) and
    K_i = round(k_min + (1 - LCC_i) * (k_max - k_min)), rounding half away
    from zero and clamping into the configured ranges.
    """
    lcc = np.asarray(lcc, dtype=np.float64)
    if np.any((lcc < 0) | (lcc > 1)):
        raise ValueError("LCC values must lie in [0, 1]")
    comp = 1.0 - lcc
    alpha = cfg.alpha_min + comp * (cfg.alpha_max - cfg.alpha_min)
    alpha = np.clip(alpha, cfg.alpha_min, cfg.alpha_max)
    k = _round_half_away(cfg.k_min + comp * (cfg.k_max - cfg.k_min))
    k = np.clip(k, cfg.k_min, cfg.k_max).astype(np.int64)
    return PropagationParams(alpha=alpha, k=k)


def adaptive_propagate(a_norm: NormalizedAdjacency, X, params: PropagationParams) -> np.ndarray:
    """Personalized propagation with per-node teleport and depth.

    The working matrix evolves globally as
    ``H <- (I - diag(alpha)) @ A_norm @ H + diag(alpha) @ X`` for ``max(K_i)``
    steps; node i's output row is snapshotted at its own depth ``K_i``. Frozen
    nodes keep participating as sources through the evolving working matrix.
    """
    X = check_features(X, num_nodes=a_norm.num_nodes)
    if params.num_nodes != a_norm.num_nodes:
        raise ValueError(
            f"params length {params.num_nodes} does not match {a_norm.num_nodes} nodes"
        )
    out = X.copy()  # depth-0 nodes keep their input rows
    if params.k.size == 0:
        return out
    max_k = int(params.k.max())
    if max_k == 0:
        return out

    alpha = params.alpha[:, None]
    retain = 1.0 - alpha
    h = X
    for step in range(1, max_k + 1):
        h = retain * (a_norm.matrix @ h) + alpha * X
        frozen = params.k == step
        if frozen.any():
            out[frozen] = h[frozen]
    return out


def fixed_propagate(a_norm: NormalizedAdjacency, X, k, alpha) -> np.ndarray:
    """Uniform-parameter propagation: every node uses the same (alpha, K)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    params = PropagationParams.constant(a_norm.num_nodes, alpha, k)
    return adaptive_propagate(a_norm, X, params)
