"""Accuracy, macro-F1, confusion matrices, and multi-run dispersion statistics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def accuracy(pred, truth, mask) -> float:
    """Fraction of masked nodes classified correctly."""
    pred, truth, mask = _check_triplet(pred, truth, mask)
    return float(np.mean(pred[mask] == truth[mask]))


def macro_f1(pred, truth, mask, num_classes) -> float:
    """Unweighted mean of per-class F1 over all ``num_classes`` classes.

    A class with zero precision+recall denominator contributes F1 = 0, so
    classes absent from both truth and prediction pull the average down.
    """
    pred, truth, mask = _check_triplet(pred, truth, mask)
    cm = confusion_matrix(pred, truth, mask, num_classes)
    tp = np.diag(cm).astype(np.float64)
    support = cm.sum(axis=1).astype(np.float64)  # truth counts
    predicted = cm.sum(axis=0).astype(np.float64)
    f1 = np.zeros(num_classes, dtype=np.float64)
    denom = support + predicted  # == (P+R) scaled; zero iff both precision and recall undefined/zero
    nz = denom > 0
    f1[nz] = 2.0 * tp[nz] / denom[nz]
    return float(f1.mean())


def confusion_matrix(pred, truth, mask, num_classes) -> np.ndarray:
    """C x C counts; entry (t, p) is masked nodes of true class t predicted p."""
    pred, truth, mask = _check_triplet(pred, truth, mask)
    for side, arr in (("truth", truth[mask]), ("pred", pred[mask])):
        if arr.size and (arr.min() < 0 or arr.max() >= num_classes):
            raise ValueError(f"{side} labels under the mask fall outside [0, {num_classes})")
    cm = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(cm, (truth[mask], pred[mask]), 1)
    return cm


def run_statistics(values):
    """Mean and population standard deviation (n divisor) of per-run values."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("need at least one value")
    if np.all(values == values[0]):  # constant input: sigma is exactly 0
        return float(values[0]), 0.0
    mean = float(values.mean())
    sigma = float(np.sqrt(np.mean((values - mean) ** 2)))
    return mean, sigma


def _check_triplet(pred, truth, mask):
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    mask = np.asarray(mask, dtype=bool)
    if not pred.shape == truth.shape == mask.shape:
        raise ValueError("pred, truth, and mask must have equal shapes")
    if not mask.any():
        raise ValueError("mask selects no nodes")
    return pred, truth, mask


@dataclass(frozen=True)
class MethodStats:
    """Aggregated multi-run results for one method."""

    name: str
    accuracy_mean: float
    accuracy_std: float
    macro_f1_mean: float
    macro_f1_std: float
    time_mean_sec: float
    confusion: np.ndarray = field(repr=False)  # from the first run

    @classmethod
    def from_runs(cls, name, accuracies, f1s, times, confusion) -> "MethodStats":
        acc_mean, acc_std = run_statistics(accuracies)
        f1_mean, f1_std = run_statistics(f1s)
        time_mean, _ = run_statistics(times)
        return cls(name, acc_mean, acc_std, f1_mean, f1_std, time_mean, np.asarray(confusion))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "accuracy": {"mean": self.accuracy_mean, "std": self.accuracy_std},
            "macro_f1": {"mean": self.macro_f1_mean, "std": self.macro_f1_std},
            "time_sec": {"mean": round(self.time_mean_sec, 3)},
            "confusion": [[int(v) for v in row] for row in self.confusion],
        }


@dataclass(frozen=True)
class EvalReport:
    """Benchmark results across methods and runs, plus run provenance."""

    dataset: str
    seed: int
    runs: int
    methods: list[MethodStats]
    config: dict | None = None  # echo of the evaluation configuration
    references: dict | None = None  # external numbers, never computed here

    def to_dict(self) -> dict:
        payload = {
            "dataset": self.dataset,
            "seed": self.seed,
            "runs": self.runs,
            "methods": [m.to_dict() for m in self.methods],
        }
        if self.config is not None:
            payload["config"] = self.config
        if self.references is not None:
            payload["references"] = self.references
        return payload
