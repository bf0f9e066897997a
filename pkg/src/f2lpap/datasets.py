"""Dataset container, on-disk format, split handling, and the synthetic generator.

Directory layout (UTF-8 text, LF newlines):

* ``meta.json``     -- ``{"name", "num_nodes", "num_features", "num_classes"}``
* ``edges.tsv``     -- one ``src<TAB>dst`` pair per line, 0-based ids
* ``features.tsv``  -- ``num_nodes`` rows of ``num_features`` tab-separated floats
* ``labels.tsv``    -- one integer per node in ``[0, num_classes)`` (or -1 for
  unlabeled val/test nodes)
* ``split.tsv``     -- one of ``train|val|test`` per node
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .graph import Graph
from .validation import (
    DatasetFormatError,
    check_features,
    check_labels,
    check_mask,
    check_train_classes,
    check_probability,
)

_ROLES = ("train", "val", "test")


@dataclass(frozen=True)
class Labels:
    """Per-node integer classes in [0, num_classes); UNLABELED marks unknowns."""

    num_classes: int
    y: np.ndarray


@dataclass(frozen=True)
class SplitMasks:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray

    def validate(self, num_nodes) -> None:
        t = check_mask(self.train, num_nodes)
        v = check_mask(self.val, num_nodes)
        s = check_mask(self.test, num_nodes)
        counts = t.astype(int) + v.astype(int) + s.astype(int)
        if np.any(counts != 1):
            raise ValueError("split roles must partition the node set")


@dataclass(frozen=True)
class Dataset:
    graph: Graph
    features: np.ndarray = field(repr=False)
    labels: Labels
    split: SplitMasks
    name: str = "unnamed"

    def validate(self) -> None:
        n = self.graph.num_nodes
        check_features(self.features, num_nodes=n)
        check_labels(self.labels.y, self.labels.num_classes, num_nodes=n)
        self.split.validate(n)
        check_train_classes(self.labels.y, self.split.train, self.labels.num_classes)

    def with_split(self, split: SplitMasks) -> "Dataset":
        ds = replace(self, split=split)
        ds.validate()
        return ds


def _read_lines(path: Path) -> list[str]:
    if not path.is_file():
        raise DatasetFormatError(f"missing file: {path}")
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def load_dataset(directory) -> Dataset:
    """Load and validate a dataset directory (see the module docstring)."""
    directory = Path(directory)
    meta_path = directory / "meta.json"
    if not meta_path.is_file():
        raise DatasetFormatError(f"missing file: {meta_path}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"invalid meta.json: {exc}") from exc
    try:
        name = str(meta["name"])
        n = int(meta["num_nodes"])
        d = int(meta["num_features"])
        c = int(meta["num_classes"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetFormatError(f"meta.json missing or invalid field: {exc}") from exc

    edge_lines = _read_lines(directory / "edges.tsv")
    src = np.empty(len(edge_lines), dtype=np.int64)
    dst = np.empty(len(edge_lines), dtype=np.int64)
    for k, line in enumerate(edge_lines):
        parts = line.split("\t")
        if len(parts) != 2:
            raise DatasetFormatError(f"edges.tsv line {k + 1}: expected 'src<TAB>dst'")
        try:
            src[k], dst[k] = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise DatasetFormatError(f"edges.tsv line {k + 1}: {exc}") from exc
    try:
        graph = Graph.from_edges(n, src, dst)
    except ValueError as exc:
        raise DatasetFormatError(str(exc)) from exc

    feat_lines = _read_lines(directory / "features.tsv")
    if len(feat_lines) != n:
        raise DatasetFormatError(
            f"features.tsv has {len(feat_lines)} rows, meta.json says {n}"
        )
    features = np.empty((n, d), dtype=np.float64)
    for k, line in enumerate(feat_lines):
        parts = line.split("\t")
        if len(parts) != d:
            raise DatasetFormatError(
                f"features.tsv line {k + 1}: expected {d} columns, got {len(parts)}"
            )
        try:
            features[k] = [float(p) for p in parts]
        except ValueError as exc:
            raise DatasetFormatError(f"features.tsv line {k + 1}: {exc}") from exc

    label_lines = _read_lines(directory / "labels.tsv")
    if len(label_lines) != n:
        raise DatasetFormatError(
            f"labels.tsv has {len(label_lines)} rows, meta.json says {n}"
        )
    try:
        y = np.array([int(line) for line in label_lines], dtype=np.int64)
    except ValueError as exc:
        raise DatasetFormatError(f"labels.tsv: {exc}") from exc

    split_lines = _read_lines(directory / "split.tsv")
    if len(split_lines) != n:
        raise DatasetFormatError(
            f"split.tsv has {len(split_lines)} rows, meta.json says {n}"
        )
    role_arrays = {role: np.zeros(n, dtype=bool) for role in _ROLES}
    for k, line in enumerate(split_lines):
        if line not in role_arrays:
            raise DatasetFormatError(
                f"split.tsv line {k + 1}: expected one of {'/'.join(_ROLES)}, got {line!r}"
            )
        role_arrays[line][k] = True

    ds = Dataset(
        graph=graph,
        features=features,
        labels=Labels(num_classes=c, y=y),
        split=SplitMasks(**role_arrays),
        name=name,
    )
    try:
        ds.validate()
    except ValueError as exc:
        raise DatasetFormatError(str(exc)) from exc
    return ds


def save_dataset(ds: Dataset, directory) -> Path:
    """Write ``ds`` in the documented directory format; returns the directory."""
    ds.validate()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    meta = {
        "name": ds.name,
        "num_nodes": ds.graph.num_nodes,
        "num_features": int(ds.features.shape[1]),
        "num_classes": ds.labels.num_classes,
    }
    (directory / "meta.json").write_text(
        json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )

    g = ds.graph
    edge_rows = []
    for i in range(g.num_nodes):
        for j in g.neighbors(i):
            if j >= i:  # emit each undirected edge once
                edge_rows.append(f"{i}\t{j}")
    (directory / "edges.tsv").write_text(
        "\n".join(edge_rows) + ("\n" if edge_rows else ""), encoding="utf-8"
    )

    feat_rows = ["\t".join(repr(float(v)) for v in row) for row in ds.features]
    (directory / "features.tsv").write_text("\n".join(feat_rows) + "\n", encoding="utf-8")

    (directory / "labels.tsv").write_text(
        "\n".join(str(int(v)) for v in ds.labels.y) + "\n", encoding="utf-8"
    )

    roles = np.where(ds.split.train, "train", np.where(ds.split.val, "val", "test"))
    (directory / "split.tsv").write_text("\n".join(roles) + "\n", encoding="utf-8")
    return directory


def stratified_split(y, num_classes, fracs, rng) -> SplitMasks:
    """Shuffle each class and allocate train/val/test by the given fractions.

    Guarantees at least one training node per class that has any nodes.
    """
    f_train, f_val, f_test = (float(f) for f in fracs)
    if not np.isclose(f_train + f_val + f_test, 1.0, atol=1e-9):
        raise ValueError("split fractions must sum to 1")
    if min(f_train, f_val, f_test) < 0:
        raise ValueError("split fractions must be non-negative")
    y = np.asarray(y)
    n = y.shape[0]
    train = np.zeros(n, dtype=bool)
    val = np.zeros(n, dtype=bool)
    test = np.zeros(n, dtype=bool)
    for c in range(num_classes):
        idx = np.flatnonzero(y == c)
        rng.shuffle(idx)
        m = idx.size
        if m == 0:
            continue
        n_train = max(1, int(round(f_train * m)))
        n_val = min(m - n_train, int(round(f_val * m)))
        train[idx[:n_train]] = True
        val[idx[n_train : n_train + n_val]] = True
        test[idx[n_train + n_val :]] = True
    # nodes of unknown class (unlabeled) go to test
    rest = ~(train | val | test)
    test[rest] = True
    return SplitMasks(train=train, val=val, test=test)


def resample_split(ds: Dataset, seed, fracs=(0.6, 0.2, 0.2)) -> Dataset:
    """Dataset with a freshly sampled stratified split, deterministic in seed."""
    rng = np.random.default_rng(seed)
    split = stratified_split(ds.labels.y, ds.labels.num_classes, fracs, rng)
    return ds.with_split(split)


def synth_planted_partition(
    num_nodes,
    num_classes,
    p_in,
    p_out,
    feature_dim,
    feature_noise,
    seed,
    split_fracs=(0.6, 0.2, 0.2),
    name="synthetic",
) -> Dataset:
    """Planted-partition graph with one-hot-plus-noise features.

    Classes are assigned round-robin; every intra-class pair is connected with
    probability ``p_in`` and every inter-class pair with ``p_out``. Features
    are the one-hot class centroid plus isotropic Gaussian noise of scale
    ``feature_noise``. Deterministic for a given seed.
    """
    if num_classes < 1 or num_classes > num_nodes:
        raise ValueError(f"need 1 <= classes <= nodes, got {num_classes}, {num_nodes}")
    p_in = check_probability(p_in, "p_in")
    p_out = check_probability(p_out, "p_out")
    if p_out > p_in:
        raise ValueError("p_out must not exceed p_in")
    if feature_dim < num_classes:
        raise ValueError("feature_dim must be >= num_classes for one-hot centroids")
    if feature_noise < 0:
        raise ValueError("feature_noise must be >= 0")

    rng = np.random.default_rng(seed)
    y = np.arange(num_nodes, dtype=np.int64) % num_classes

    iu, ju = np.triu_indices(num_nodes, k=1)
    prob = np.where(y[iu] == y[ju], p_in, p_out)
    keep = rng.random(iu.size) < prob
    graph = Graph.from_edges(num_nodes, iu[keep], ju[keep])

    features = np.zeros((num_nodes, feature_dim), dtype=np.float64)
    features[np.arange(num_nodes), y] = 1.0
    if feature_noise > 0:
        features += feature_noise * rng.standard_normal((num_nodes, feature_dim))

    split = stratified_split(y, num_classes, split_fracs, rng)
    ds = Dataset(
        graph=graph,
        features=features,
        labels=Labels(num_classes=num_classes, y=y),
        split=split,
        name=name,
    )
    ds.validate()
    return ds
