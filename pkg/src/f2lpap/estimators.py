"""scikit-learn style estimator wrapping the training-free pipeline.

The task is transductive: the graph, all node features, and the partially
observed labels go into ``fit`` together, and ``predict`` returns labels for
every node. Following the ``sklearn.semi_supervised`` convention, unlabeled
nodes carry ``-1`` in ``y``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .classify import assign_labels, cosine_scores
from .graph import Graph, compute_lcc, normalize_adjacency
from .datasets import Labels
from .prototypes import WeiszfeldConfig, build_prototypes
from .propagation import KernelConfig, adaptive_propagate, fixed_propagate, map_lcc_to_params
from .validation import check_features, check_labels


class F2LPClassifier(BaseEstimator):
    """Training-free transductive node classifier.

    Builds one prototype per class from the labeled nodes' raw features,
    propagates all features over the graph with per-node parameters driven by
    the local clustering coefficient, and assigns each node the class of its
    most cosine-similar prototype.

    Parameters
    ----------
    k_min, k_max : int
        Propagation depth range for the adaptive kernel.
    alpha_min, alpha_max : float
        Teleport probability range for the adaptive kernel.
    prototype_method : {"geometric_median", "mean"}
        Robust (default) or plain-average class prototypes.
    propagation : {"adaptive", "fixed", "none"}
        Adaptive per-node kernel, a uniform APPNP-style kernel using
        ``fixed_k``/``fixed_alpha``, or no propagation at all.
    fixed_k, fixed_alpha : int, float
        Parameters used when ``propagation="fixed"``.
    weiszfeld_tol, weiszfeld_max_iter : float, int
        Stopping rule for the geometric-median iteration.

    Attributes
    ----------
    classes_ : ndarray of shape (C,)
    prototypes_ : PrototypeSet
    lcc_ : ndarray of shape (n,)
    alpha_, k_ : ndarray of shape (n,)
        Per-node propagation parameters (adaptive mode only).
    scores_ : ndarray of shape (n, C)
    transduction_ : ndarray of shape (n,)
        Predicted class per node.
    """

    def __init__(
        self,
        k_min=3,
        k_max=15,
        alpha_min=0.1,
        alpha_max=0.2,
        prototype_method="geometric_median",
        propagation="adaptive",
        fixed_k=5,
        fixed_alpha=0.1,
        weiszfeld_tol=1e-6,
        weiszfeld_max_iter=100,
    ):
        self.k_min = k_min
        self.k_max = k_max
        self.alpha_min = alpha_min
        self.alpha_max = alpha_max
        self.prototype_method = prototype_method
        self.propagation = propagation
        self.fixed_k = fixed_k
        self.fixed_alpha = fixed_alpha
        self.weiszfeld_tol = weiszfeld_tol
        self.weiszfeld_max_iter = weiszfeld_max_iter

    def fit(self, graph: Graph, X, y):
        """Run the pipeline; ``y`` holds class ids with -1 for unlabeled nodes."""
        if self.propagation not in ("adaptive", "fixed", "none"):
            raise ValueError(f"unknown propagation mode: {self.propagation!r}")
        X = check_features(X, num_nodes=graph.num_nodes)
        y = np.asarray(y)
        labeled = y >= 0
        if not labeled.any():
            raise ValueError("need at least one labeled node")
        num_classes = int(y[labeled].max()) + 1
        y = check_labels(y, num_classes, num_nodes=graph.num_nodes)

        wcfg = WeiszfeldConfig(
            tolerance=self.weiszfeld_tol, max_iterations=self.weiszfeld_max_iter
        )
        labels = Labels(num_classes=num_classes, y=y)
        self.prototypes_ = build_prototypes(
            X, labels, labeled, method=self.prototype_method, cfg=wcfg
        )

        if self.propagation == "adaptive":
            kcfg = KernelConfig(
                k_min=self.k_min,
                k_max=self.k_max,
                alpha_min=self.alpha_min,
                alpha_max=self.alpha_max,
            )
            self.lcc_ = compute_lcc(graph)
            params = map_lcc_to_params(self.lcc_, kcfg)
            self.alpha_, self.k_ = params.alpha, params.k
            x_hat = adaptive_propagate(normalize_adjacency(graph), X, params)
        elif self.propagation == "fixed":
            self.lcc_ = compute_lcc(graph)
            x_hat = fixed_propagate(normalize_adjacency(graph), X, self.fixed_k, self.fixed_alpha)
        else:
            self.lcc_ = compute_lcc(graph)
            x_hat = X

        self.classes_ = np.arange(num_classes)
        self.scores_ = cosine_scores(x_hat, self.prototypes_)
        prediction = assign_labels(self.scores_)
        self.transduction_ = prediction.labels
        self.tie_count_ = prediction.tie_count
        return self

    def predict(self) -> np.ndarray:
        """Predicted class for every node of the fitted graph."""
        if not hasattr(self, "transduction_"):
            raise NotFittedError("F2LPClassifier is not fitted; call fit first")
        return self.transduction_

    def score(self, y_true, mask=None) -> float:
        """Accuracy of the transduction against ``y_true``, optionally masked."""
        pred = self.predict()
        y_true = np.asarray(y_true)
        if mask is None:
            mask = np.ones_like(pred, dtype=bool)
        mask = np.asarray(mask, dtype=bool)
        return float(np.mean(pred[mask] == y_true[mask]))
