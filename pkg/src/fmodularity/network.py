"""Bipartite multigraphs, frequency matrices, and degree null models."""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .validation import check_counts, check_square_symmetric

__all__ = [
    "BipartiteMultigraph",
    "FrequencyMatrix",
    "frequency_from_graph",
    "frequency_from_counts",
    "induce_bipartite",
    "null_model",
    "newman_null",
]


@dataclass
class BipartiteMultigraph:
    """Edge multiset between a u-side and a v-side vertex set."""

    u_count: int
    v_count: int
    edges: List[Tuple[int, int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.u_count = int(self.u_count)
        self.v_count = int(self.v_count)
        if self.u_count < 1 or self.v_count < 1:
            raise ValueError("both vertex sides must be nonempty")
        cleaned = []
        for u, v, *rest in self.edges:
            mult = int(rest[0]) if rest else 1
            u, v = int(u), int(v)
            if not (0 <= u < self.u_count and 0 <= v < self.v_count):
                raise ValueError(f"edge ({u}, {v}) out of bounds")
            if mult < 1:
                raise ValueError("edge multiplicities must be >= 1")
            cleaned.append((u, v, mult))
        if not cleaned:
            raise ValueError("graph has no edges")
        self.edges = cleaned

    @property
    def n_edges(self) -> int:
        return sum(m for _, _, m in self.edges)

    def count_matrix(self) -> np.ndarray:
        """Dense multiplicity matrix B with B[u, v] = number of (u, v) edges."""
        B = np.zeros((self.u_count, self.v_count))
        for u, v, m in self.edges:
            B[u, v] += m
        return B

    @classmethod
    def from_count_matrix(cls, B) -> "BipartiteMultigraph":
        B = check_counts(B)
        edges = [
            (int(u), int(v), int(B[u, v]))
            for u, v in zip(*np.nonzero(B))
        ]
        return cls(B.shape[0], B.shape[1], edges)


@dataclass
class FrequencyMatrix:
    """Empirical edge distribution F = B/N plus the edge count N behind it."""

    F: np.ndarray
    N: int

    def __post_init__(self):
        self.F = np.asarray(self.F, dtype=float)
        self.N = int(self.N)
        if self.N < 1:
            raise ValueError("edge count N must be >= 1")
        if self.F.ndim != 2:
            raise ValueError("F must be a 2-d matrix")
        if np.any(self.F < 0):
            raise ValueError("F has negative entries")
        if abs(self.F.sum() - 1.0) > 1e-12:
            raise ValueError("F must sum to 1")
        if np.any(np.abs(self.N * self.F - np.round(self.N * self.F)) > 1e-9):
            raise ValueError("N * F must be integer counts")

    @property
    def shape(self):
        return self.F.shape


def frequency_from_graph(g: BipartiteMultigraph) -> FrequencyMatrix:
    """Normalize a multigraph's count matrix by its total edge count."""
    N = g.n_edges
    return FrequencyMatrix(g.count_matrix() / N, N)


def frequency_from_counts(B) -> FrequencyMatrix:
    """Build a FrequencyMatrix straight from a nonnegative integer matrix."""
    B = check_counts(B)
    N = B.sum()
    if N < 1:
        raise ValueError("count matrix is empty")
    return FrequencyMatrix(B / N, int(N))


def induce_bipartite(A) -> BipartiteMultigraph:
    """Turn a symmetric adjacency matrix into its bipartite double cover.

    Every vertex splits into a u-copy and a v-copy and the biadjacency
    matrix is A itself, so each undirected edge is counted once per
    direction and N = sum(A).
    """
    A = check_square_symmetric(A)
    A = check_counts(A)
    if A.sum() < 1:
        raise ValueError("graph has no edges")
    return BipartiteMultigraph.from_count_matrix(A)


def null_model(fm: FrequencyMatrix) -> np.ndarray:
    """Unbiased configuration null J = (deg(u)deg(v) - F/N) * N/(N-1).

    Entries are nonnegative (positive F entries are >= 1/N, hence
    deg(u)deg(v) >= F^2 >= F/N) and sum to 1; tiny negative rounding
    dust is clipped to zero.
    """
    if fm.N < 2:
        raise ValueError("null model undefined for N < 2")
    du = fm.F.sum(axis=1)
    dv = fm.F.sum(axis=0)
    J = (np.outer(du, dv) - fm.F / fm.N) * (fm.N / (fm.N - 1.0))
    return np.maximum(J, 0.0)


def newman_null(fm: FrequencyMatrix) -> np.ndarray:
    """Biased null J' = deg(u) deg(v), the N -> infinity limit of null_model."""
    du = fm.F.sum(axis=1)
    dv = fm.F.sum(axis=0)
    return np.outer(du, dv)
