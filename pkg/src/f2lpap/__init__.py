"""Training-free graph node classification.

Robust geometric-median class prototypes, clustering-coefficient-driven
adaptive feature propagation, and analytical cosine-prototype assignment,
plus the training-free baselines and a benchmark harness.
"""

from .baselines import METHODS, RunConfig, knn_classify, label_propagation, run_method
from .classify import F2LPResult, Prediction, assign_labels, cosine_scores, f2lp_predict
from .datasets import (
    Dataset,
    Labels,
    SplitMasks,
    load_dataset,
    resample_split,
    save_dataset,
    synth_planted_partition,
)
from .estimators import F2LPClassifier
from .graph import Graph, NormalizedAdjacency, compute_lcc, edge_homophily, normalize_adjacency
from .metrics import EvalReport, MethodStats, accuracy, confusion_matrix, macro_f1, run_statistics
from .prototypes import (
    PrototypeSet,
    WeiszfeldConfig,
    build_prototypes,
    geometric_median,
    geometric_median_trace,
    mean_prototype,
)
from .propagation import (
    KernelConfig,
    PropagationParams,
    adaptive_propagate,
    fixed_propagate,
    map_lcc_to_params,
)
from .validation import UNLABELED, ConfigurationError, DatasetFormatError

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "Dataset",
    "DatasetFormatError",
    "EvalReport",
    "F2LPClassifier",
    "F2LPResult",
    "Graph",
    "KernelConfig",
    "Labels",
    "METHODS",
    "MethodStats",
    "NormalizedAdjacency",
    "Prediction",
    "PropagationParams",
    "PrototypeSet",
    "RunConfig",
    "SplitMasks",
    "UNLABELED",
    "WeiszfeldConfig",
    "accuracy",
    "adaptive_propagate",
    "assign_labels",
    "build_prototypes",
    "compute_lcc",
    "confusion_matrix",
    "cosine_scores",
    "edge_homophily",
    "f2lp_predict",
    "fixed_propagate",
    "geometric_median",
    "geometric_median_trace",
    "knn_classify",
    "label_propagation",
    "load_dataset",
    "macro_f1",
    "map_lcc_to_params",
    "mean_prototype",
    "normalize_adjacency",
    "resample_split",
    "run_method",
    "run_statistics",
    "save_dataset",
    "synth_planted_partition",
]
