import logging

import numpy as np
import pytest

from f2lpap.baselines import (
    METHODS,
    RunConfig,
    knn_classify,
    label_propagation,
    run_method,
)
from f2lpap.classify import assign_labels, cosine_scores, f2lp_predict
from f2lpap.datasets import Labels, synth_planted_partition
from f2lpap.graph import Graph, normalize_adjacency
from f2lpap.prototypes import build_prototypes
from f2lpap.propagation import KernelConfig, PropagationParams, adaptive_propagate
from f2lpap.validation import ConfigurationError

from oracles import brute_knn_cosine, dense_label_propagation, random_graph


class TestLabelPropagation:
    def test_all_train_returns_given_labels(self):
        rng = np.random.default_rng(0)
        g = random_graph(rng, 20, 0.2)
        y = rng.integers(0, 3, 20)
        labels = Labels(num_classes=3, y=y.astype(np.int64))
        pred = label_propagation(normalize_adjacency(g), labels, np.ones(20, dtype=bool))
        np.testing.assert_array_equal(pred.labels, y)

    def test_disjoint_components_take_their_seed_class(self):
        # two triangles, one seed each
        g = Graph.from_edges(6, [0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3])
        y = np.array([0, -1, -1, 1, -1, -1], dtype=np.int64)
        train = np.array([True, False, False, True, False, False])
        pred = label_propagation(normalize_adjacency(g), Labels(2, y), train)
        assert pred.labels.tolist() == [0, 0, 0, 1, 1, 1]

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            n = int(rng.integers(4, 50))
            g = random_graph(rng, n, 0.25)
            y = rng.integers(0, 2, n).astype(np.int64)
            train = np.zeros(n, dtype=bool)
            train[y == 0] = rng.random(int((y == 0).sum())) < 0.5
            train[y == 1] = rng.random(int((y == 1).sum())) < 0.5
            train[np.flatnonzero(y == 0)[:1]] = True
            train[np.flatnonzero(y == 1)[:1]] = True
            a_norm = normalize_adjacency(g)
            pred = label_propagation(a_norm, Labels(2, y), train)
            want = dense_label_propagation(a_norm.dense(), y, 2, train)
            np.testing.assert_array_equal(pred.labels, want.argmax(axis=1))

    def test_train_rows_stay_clamped(self):
        rng = np.random.default_rng(2)
        g = random_graph(rng, 30, 0.2)
        y = rng.integers(0, 3, 30).astype(np.int64)
        train = np.zeros(30, dtype=bool)
        train[:9] = True
        y[:9] = np.arange(9) % 3
        pred = label_propagation(normalize_adjacency(g), Labels(3, y), train)
        np.testing.assert_array_equal(pred.labels[:9], y[:9])

    def test_empty_train_class_rejected(self):
        g = Graph.from_edges(2, [0], [1])
        with pytest.raises(ValueError, match="empty training class"):
            label_propagation(
                normalize_adjacency(g),
                Labels(2, np.array([0, 1])),
                np.array([True, False]),
            )


class TestKnnClassify:
    def test_exact_match_with_k1(self):
        X = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
        labels = Labels(2, np.array([0, 1, -1]))
        train = np.array([True, True, False])
        pred = knn_classify(X, labels, train, k=1)
        assert pred.labels[2] == 0

    def test_single_class_train_set(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(15, 3))
        labels = Labels(2, np.full(15, 1, dtype=np.int64))
        train = np.zeros(15, dtype=bool)
        train[:4] = True
        pred = knn_classify(X, labels, train, k=3)
        assert np.all(pred.labels == 1)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(30, 2))
        y = rng.integers(0, 3, 30).astype(np.int64)
        train = np.zeros(30, dtype=bool)
        train[:12] = True
        pred = knn_classify(X, Labels(3, y), train, k=5)
        want = brute_knn_cosine(X, y, np.flatnonzero(train), 5, 3)
        np.testing.assert_array_equal(pred.labels, want)

    def test_k_clamped_with_warning(self, caplog):
        X = np.eye(3)
        labels = Labels(2, np.array([0, 1, -1]))
        train = np.array([True, True, False])
        with caplog.at_level(logging.WARNING, logger="f2lpap.baselines"):
            pred = knn_classify(X, labels, train, k=10)
        assert "clamping" in caplog.text
        assert pred.labels.shape == (3,)

    def test_invariant_to_positive_rescaling(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(25, 4))
        y = rng.integers(0, 2, 25).astype(np.int64)
        train = np.zeros(25, dtype=bool)
        train[:10] = True
        a = knn_classify(X, Labels(2, y), train, k=5)
        b = knn_classify(123.0 * X, Labels(2, y), train, k=5)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_bad_metric_rejected(self):
        with pytest.raises(ConfigurationError, match="metric"):
            knn_classify(np.eye(2), Labels(2, np.array([0, 1])),
                         np.array([True, True]), k=1, metric="euclidean")

    def test_nonpositive_k_rejected(self):
        with pytest.raises(ConfigurationError, match="k"):
            knn_classify(np.eye(2), Labels(2, np.array([0, 1])),
                         np.array([True, True]), k=0)


@pytest.fixture(scope="module")
def ds():
    return synth_planted_partition(100, 3, 0.15, 0.02, 4, 0.8, seed=6)


class TestRunMethod:

    def test_proto_geomed_equals_pipeline_with_full_teleport(self, ds):
        pred, _ = run_method(ds, "proto_geomed")
        prototypes = build_prototypes(ds.features, ds.labels, ds.split.train)
        params = PropagationParams.constant(ds.graph.num_nodes, 1.0, 5)
        x_hat = adaptive_propagate(normalize_adjacency(ds.graph), ds.features, params)
        manual = assign_labels(cosine_scores(x_hat, prototypes))
        np.testing.assert_array_equal(pred.labels, manual.labels)

    def test_fixed_appnp_equals_constant_param_pipeline(self, ds):
        pred, _ = run_method(ds, "fixed_appnp_proto", RunConfig(fixed_k=5, fixed_alpha=0.1))
        prototypes = build_prototypes(ds.features, ds.labels, ds.split.train)
        params = PropagationParams.constant(ds.graph.num_nodes, 0.1, 5)
        x_hat = adaptive_propagate(normalize_adjacency(ds.graph), ds.features, params)
        manual = assign_labels(cosine_scores(x_hat, prototypes))
        np.testing.assert_array_equal(pred.labels, manual.labels)

    def test_f2lp_dispatch_equals_direct_call(self, ds):
        pred, _ = run_method(ds, "f2lp")
        direct = f2lp_predict(ds, KernelConfig())
        np.testing.assert_array_equal(pred.labels, direct.prediction.labels)

    def test_unknown_method_rejected(self, ds):
        with pytest.raises(ConfigurationError, match="unknown method"):
            run_method(ds, "gcn")

    @pytest.mark.parametrize("method", METHODS)
    def test_every_method_predicts_every_node(self, ds, method):
        pred, elapsed = run_method(ds, method)
        assert pred.labels.shape == (ds.graph.num_nodes,)
        assert np.all((pred.labels >= 0) & (pred.labels < 3))
        assert elapsed >= 0.0
