"""Planted block distributions, multinomial graph sampling, contraction."""

from typing import List, Sequence, Tuple

import numpy as np

from .network import BipartiteMultigraph, frequency_from_counts
from .validation import check_distribution

__all__ = [
    "sbm_distribution",
    "initial_groups",
    "sample_counts",
    "sample_graph",
    "sample_frequency",
    "contract",
    "merge_kernel",
    "run_schedule",
]


def sbm_distribution(m, n, alpha) -> np.ndarray:
    """Planted-block edge distribution on (m*n) x (m*n) vertices.

    Cell weight is 1 inside a community block and alpha across blocks,
    normalized to total mass 1.
    """
    m, n = int(m), int(n)
    alpha = float(alpha)
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    labels = np.repeat(np.arange(m), n)
    W = np.where(labels[:, None] == labels[None, :], 1.0, alpha)
    return W / W.sum()


def initial_groups(m, n) -> List[List[int]]:
    """Vertex-index groups of the m planted communities, n vertices each."""
    return [list(range(b * n, (b + 1) * n)) for b in range(int(m))]


def sample_counts(P, n_edges, seed) -> np.ndarray:
    """Multinomial cell counts from n_edges i.i.d. draws of P.

    Implemented by inverse-CDF sampling over the flattened cells, so a
    given seed fixes the draw regardless of how trials are scheduled.
    """
    P = check_distribution(P, name="P")
    n_edges = int(n_edges)
    if n_edges < 1:
        raise ValueError("need at least one edge")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(P.ravel())
    cdf[-1] = 1.0
    # side="right" skips zero-probability cells (their cdf step is empty)
    idx = np.searchsorted(cdf, rng.random(n_edges), side="right")
    return np.bincount(idx, minlength=P.size).reshape(P.shape).astype(float)


def sample_graph(P, n_edges, seed) -> BipartiteMultigraph:
    """Sample a multigraph realization of the distribution P."""
    return BipartiteMultigraph.from_count_matrix(sample_counts(P, n_edges, seed))


def sample_frequency(P, n_edges, seed):
    """Sample straight to a FrequencyMatrix (skips the edge-list detour)."""
    return frequency_from_counts(sample_counts(P, n_edges, seed))


def _check_groups(P, groups, i, j):
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("contraction expects a square distribution matrix")
    i, j = int(i), int(j)
    if i == j:
        raise ValueError("cannot contract a group with itself")
    if not (0 <= i < len(groups)) or not (0 <= j < len(groups)):
        raise ValueError(
            f"group ids ({i}, {j}) out of range for {len(groups)} groups"
        )
    return i, j


def contract(P, groups: Sequence[Sequence[int]], i, j) -> Tuple[np.ndarray, list]:
    """Merge groups i and j, spreading the rectangle's mass evenly.

    Every cell of the merged-rows x merged-cols rectangle becomes the
    rectangle's total mass divided by its cell count; everything outside
    is untouched, so the total mass is conserved.  The merged group
    replaces position min(i, j) in the returned group list.
    """
    P = np.asarray(P, dtype=float)
    i, j = _check_groups(P, groups, i, j)
    merged = sorted(list(groups[i]) + list(groups[j]))
    idx = np.asarray(merged, dtype=int)
    if len(set(merged)) != len(merged):
        raise ValueError("groups overlap")
    if np.any(idx < 0) or np.any(idx >= P.shape[0]):
        raise ValueError("group vertex index out of range")
    block = np.ix_(idx, idx)
    out = P.copy()
    out[block] = P[block].sum() / (len(idx) ** 2)
    a, b = min(i, j), max(i, j)
    new_groups = (
        [list(g) for g in groups[:a]]
        + [merged]
        + [list(g) for g in groups[a + 1 : b]]
        + [list(g) for g in groups[b + 1 :]]
    )
    return out, new_groups


def merge_kernel(size, merged: Sequence[int]) -> np.ndarray:
    """Column-stochastic kernel averaging the merged indices, identity elsewhere.

    Applying it to rows and then columns reproduces contract() on any
    distribution that is constant on each group rectangle, which is how
    the contraction step factors into two one-sided channels.
    """
    idx = np.asarray(sorted(merged), dtype=int)
    K = np.eye(int(size))
    K[np.ix_(idx, idx)] = 1.0 / len(idx)
    return K


def run_schedule(P, groups, schedule) -> List[np.ndarray]:
    """All stage distributions along a merge schedule, initial one included."""
    stages = [np.asarray(P, dtype=float)]
    cur_groups = [list(g) for g in groups]
    for step in schedule:
        if len(step) != 2:
            raise ValueError(f"each merge step needs two group ids, got {step!r}")
        P, cur_groups = contract(stages[-1], cur_groups, step[0], step[1])
        stages.append(P)
    return stages
