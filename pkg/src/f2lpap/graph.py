"""Undirected CSR graph, symmetric normalization, and local clustering coefficients."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph in compressed sparse row form.

    Neighbor lists are sorted and deduplicated. A self-loop, if present in the
    input, is stored once in its row and flagged in ``self_loops``; self-loops
    are excluded from ``degrees``.
    """

    num_nodes: int
    csr_offsets: np.ndarray
    csr_neighbors: np.ndarray
    degrees: np.ndarray
    self_loops: np.ndarray

    @classmethod
    def from_edges(cls, num_nodes, src, dst) -> "Graph":
        """Build a graph from an edge list, symmetrizing and deduplicating.

        Both (i, j) and (j, i), and repeated copies of either, collapse to a
        single undirected edge; the number of dropped duplicate entries is
        logged.
        """
        if num_nodes < 0:
            raise ValueError("num_nodes must be >= 0")
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have equal length")
        if src.size and (
            src.min() < 0 or dst.min() < 0 or src.max() >= num_nodes or dst.max() >= num_nodes
        ):
            raise ValueError(f"node id out of range [0, {num_nodes})")

        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        keys = rows * num_nodes + cols
        unique_keys = np.unique(keys)
        dropped = keys.size - unique_keys.size
        if dropped:
            logger.info("dropped %d duplicate directed edge entries", dropped)
        rows = unique_keys // max(num_nodes, 1)
        cols = unique_keys % max(num_nodes, 1)

        offsets = np.zeros(num_nodes + 1, dtype=np.int64)
        np.add.at(offsets, rows + 1, 1)
        np.cumsum(offsets, out=offsets)
        # unique_keys is sorted, so (rows, cols) already arrive row-major sorted
        neighbors = cols.astype(np.int64)

        loops = np.zeros(num_nodes, dtype=bool)
        loop_rows = rows[rows == cols]
        loops[loop_rows] = True
        degrees = np.diff(offsets) - loops.astype(np.int64)

        g = cls(
            num_nodes=int(num_nodes),
            csr_offsets=offsets,
            csr_neighbors=neighbors,
            degrees=degrees,
            self_loops=loops,
        )
        g.validate()
        return g

    @property
    def num_edges(self) -> int:
        """Undirected edge count, self-loops included once each."""
        off_diag = self.csr_neighbors.size - int(self.self_loops.sum())
        return off_diag // 2 + int(self.self_loops.sum())

    def neighbors(self, i) -> np.ndarray:
        """Sorted neighbor ids of node ``i`` (may include ``i`` if flagged)."""
        return self.csr_neighbors[self.csr_offsets[i] : self.csr_offsets[i + 1]]

    def adjacency(self, *, include_self_loops=False) -> sp.csr_matrix:
        """The 0/1 adjacency as a scipy CSR matrix."""
        data = np.ones(self.csr_neighbors.size, dtype=np.float64)
        a = sp.csr_matrix(
            (data, self.csr_neighbors, self.csr_offsets),
            shape=(self.num_nodes, self.num_nodes),
        )
        if not include_self_loops and self.self_loops.any():
            a = a.tolil()
            a.setdiag(0.0)
            a = a.tocsr()
            a.eliminate_zeros()
        return a

    def validate(self) -> None:
        off, nbr = self.csr_offsets, self.csr_neighbors
        if off.shape != (self.num_nodes + 1,):
            raise ValueError("csr_offsets must have length num_nodes + 1")
        if off[0] != 0 or off[-1] != nbr.size or np.any(np.diff(off) < 0):
            raise ValueError("csr_offsets must be non-decreasing and span csr_neighbors")
        if nbr.size and (nbr.min() < 0 or nbr.max() >= self.num_nodes):
            raise ValueError("neighbor id out of range")
        for i in range(self.num_nodes):
            row = nbr[off[i] : off[i + 1]]
            if np.any(np.diff(row) <= 0):
                raise ValueError(f"row {i} is not strictly sorted (duplicate entries?)")
        # symmetry: the transpose must hit the same entry set
        a = self.adjacency(include_self_loops=True)
        if (a != a.T).nnz != 0:
            raise ValueError("adjacency is not symmetric")


@dataclass(frozen=True)
class NormalizedAdjacency:
    """Symmetric normalization of A with self-loops added once per node."""

    matrix: sp.csr_matrix = field(repr=False)
    kind: str = "symmetric_with_self_loops"

    @property
    def num_nodes(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def normalize_adjacency(g: Graph) -> NormalizedAdjacency:
    """Return D^{-1/2} (A + I) D^{-1/2} with D the degree of A + I.

    The diagonal carries exactly one self-loop per node regardless of stored
    self-loops, so isolated nodes end up with a single weight-1 entry.
    """
    a_hat = g.adjacency(include_self_loops=False)
    a_hat = a_hat + sp.identity(g.num_nodes, format="csr", dtype=np.float64)
    deg_hat = np.asarray(a_hat.sum(axis=1)).ravel()
    inv_sqrt = 1.0 / np.sqrt(deg_hat)
    norm = a_hat.multiply(inv_sqrt[:, None]).multiply(inv_sqrt[None, :]).tocsr()
    norm.sort_indices()
    return NormalizedAdjacency(matrix=norm)


def compute_lcc(g: Graph) -> np.ndarray:
    """Local clustering coefficient per node.

    For d_i >= 2 this is 2*E_i / (d_i * (d_i - 1)) with E_i the number of
    edges among the neighbors of i; nodes of degree 0 or 1 get 0. Self-loops
    count toward neither degrees nor triangles.
    """
    a = g.adjacency(include_self_loops=False)
    # row i of (A @ A) * A sums to twice the number of edges among N(i),
    # since each closing edge (u, v) is seen from both endpoints
    closure = (a @ a).multiply(a)
    twice_edges = np.asarray(closure.sum(axis=1)).ravel()
    d = g.degrees.astype(np.float64)
    lcc = np.zeros(g.num_nodes, dtype=np.float64)
    mask = g.degrees >= 2
    lcc[mask] = twice_edges[mask] / (d[mask] * (d[mask] - 1.0))
    return lcc


def edge_homophily(g: Graph, y) -> float:
    """Fraction of (non-loop) edges whose endpoints share a class label."""
    y = np.asarray(y)
    total = 0
    same = 0
    for i in range(g.num_nodes):
        row = g.neighbors(i)
        row = row[row > i]
        total += row.size
        same += int(np.count_nonzero(y[row] == y[i]))
    if total == 0:
        return float("nan")
    return same / total
