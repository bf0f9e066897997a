import numpy as np
import pytest

from f2lpap.graph import Graph, compute_lcc, edge_homophily, normalize_adjacency

from oracles import brute_lcc, dense_normalized, random_graph


def path_graph(n):
    return Graph.from_edges(n, np.arange(n - 1), np.arange(1, n))


class TestGraphConstruction:
    def test_path_degrees(self):
        g = path_graph(3)
        assert g.degrees.tolist() == [1, 2, 1]
        assert g.num_edges == 2

    def test_symmetrize_and_dedup(self):
        # "0 1" and "1 0" collapse to a single undirected edge
        g = Graph.from_edges(2, [0, 1], [1, 0])
        assert g.degrees.tolist() == [1, 1]
        assert g.num_edges == 1

    def test_repeated_edges_dropped(self):
        g = Graph.from_edges(3, [0, 0, 0, 1], [1, 1, 1, 2])
        assert g.degrees.tolist() == [1, 2, 1]

    def test_self_loop_stored_once_and_flagged(self):
        g = Graph.from_edges(2, [0, 0, 0], [0, 0, 1])
        assert g.self_loops.tolist() == [True, False]
        assert g.degrees.tolist() == [1, 1]  # loop excluded from degree
        assert g.neighbors(0).tolist() == [0, 1]

    def test_node_id_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph.from_edges(2, [0], [2])

    def test_neighbors_sorted_and_symmetric(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            g = random_graph(rng, int(rng.integers(2, 40)), 0.2)
            g.validate()


class TestNormalizeAdjacency:
    def test_isolated_node(self):
        g = Graph.from_edges(1, [], [])
        a = normalize_adjacency(g)
        assert a.dense() == pytest.approx(np.array([[1.0]]))

    def test_two_node_edge(self):
        g = Graph.from_edges(2, [0], [1])
        a = normalize_adjacency(g).dense()
        assert a == pytest.approx(np.full((2, 2), 0.5), abs=1e-15)

    def test_path_matches_dense_oracle(self):
        g = path_graph(3)
        got = normalize_adjacency(g).dense()
        np.testing.assert_allclose(got, dense_normalized(g), atol=1e-12)

    def test_random_graphs_match_dense_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            n = int(rng.integers(1, 100))
            g = random_graph(rng, n, float(rng.uniform(0.01, 0.5)))
            got = normalize_adjacency(g).dense()
            np.testing.assert_allclose(got, dense_normalized(g), atol=1e-12)

    def test_symmetry_and_spectral_bound(self):
        # row sums of the symmetric normalization can exceed 1 (e.g. star
        # centers); the stability guarantee is the eigenvalue bound
        rng = np.random.default_rng(2)
        for _ in range(10):
            g = random_graph(rng, 60, 0.1)
            a = normalize_adjacency(g)
            dense = a.dense()
            np.testing.assert_allclose(dense, dense.T, atol=1e-12)
            assert np.all(a.matrix.data > 0)
            assert np.linalg.eigvalsh(dense).max() <= 1 + 1e-9

    def test_self_loop_in_input_does_not_double_diagonal(self):
        g = Graph.from_edges(2, [0, 0], [0, 1])
        a = normalize_adjacency(g).dense()
        np.testing.assert_allclose(a, np.full((2, 2), 0.5), atol=1e-15)


class TestComputeLcc:
    def test_triangle_is_fully_closed(self):
        g = Graph.from_edges(3, [0, 1, 2], [1, 2, 0])
        assert compute_lcc(g).tolist() == [1.0, 1.0, 1.0]

    def test_path_middle_node_open(self):
        g = path_graph(3)
        assert compute_lcc(g).tolist() == [0.0, 0.0, 0.0]

    def test_degree_three_single_closing_edge(self):
        # hub 0 with neighbors 1,2,3; only 1-2 present among them
        g = Graph.from_edges(4, [0, 0, 0, 1], [1, 2, 3, 2])
        lcc = compute_lcc(g)
        assert lcc[0] == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_self_loops_do_not_count(self):
        g = Graph.from_edges(3, [0, 1, 2, 0], [1, 2, 0, 0])
        assert compute_lcc(g).tolist() == [1.0, 1.0, 1.0]

    def test_random_graphs_match_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            n = int(rng.integers(2, 200))
            g = random_graph(rng, n, float(rng.uniform(0.01, 0.3)))
            got = compute_lcc(g)
            want = brute_lcc(g)
            assert np.all((got >= 0) & (got <= 1))
            np.testing.assert_allclose(got, want, atol=1e-12)


def test_edge_homophily_path():
    g = path_graph(3)
    assert edge_homophily(g, [0, 0, 1]) == pytest.approx(0.5)
