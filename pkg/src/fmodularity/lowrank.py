"""Low-rank tools: truncated SVD, multiplicative-update NMF, rank selection."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

__all__ = [
    "LowRankFactors",
    "truncated_svd",
    "nmf",
    "residual_ratio",
    "select_rank",
    "rank_from_singular_values",
]

# floor for multiplicative-update denominators
_MU_DENOM_FLOOR = 1e-12


@dataclass
class LowRankFactors:
    """Factor pair (left, right) representing the product left @ right.T."""

    left: np.ndarray
    right: np.ndarray
    method: str
    singular_values: Optional[np.ndarray] = None
    objective_history: Optional[List[float]] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.left.shape[1]

    def reconstruct(self) -> np.ndarray:
        return self.left @ self.right.T


def truncated_svd(M, r) -> LowRankFactors:
    """Best rank-r approximation of M in Frobenius norm."""
    M = np.asarray(M, dtype=float)
    r = int(r)
    if not 1 <= r <= min(M.shape):
        raise ValueError(f"rank {r} out of range for shape {M.shape}")
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    return LowRankFactors(
        left=U[:, :r] * s[:r],
        right=Vt[:r].T,
        method="svd",
        singular_values=s,
    )


def nmf(M, r, max_iter=500, tol=1e-6, seed=0) -> LowRankFactors:
    """Nonnegative factorization by Frobenius multiplicative updates.

    Initial factors are seeded uniform draws from (0, 1]; iteration stops
    after max_iter rounds or when the relative objective change drops
    below tol.  The squared-error objective after each round is recorded
    in objective_history.
    """
    M = np.asarray(M, dtype=float)
    if np.any(M < 0):
        raise ValueError("nmf input must be nonnegative")
    r = int(r)
    if not 1 <= r <= min(M.shape):
        raise ValueError(f"rank {r} out of range for shape {M.shape}")
    rng = np.random.default_rng(seed)
    # 1 - random() lies in (0, 1], avoiding exact-zero starting entries
    W = 1.0 - rng.random((M.shape[0], r))
    H = 1.0 - rng.random((r, M.shape[1]))

    def objective():
        R = M - W @ H
        return float(np.sum(R * R))

    history = [objective()]
    for _ in range(max_iter):
        W *= (M @ H.T) / np.maximum(W @ (H @ H.T), _MU_DENOM_FLOOR)
        H *= (W.T @ M) / np.maximum((W.T @ W) @ H, _MU_DENOM_FLOOR)
        history.append(objective())
        prev, cur = history[-2], history[-1]
        if abs(prev - cur) <= tol * max(prev, _MU_DENOM_FLOOR):
            break
    return LowRankFactors(
        left=W, right=H.T, method="nmf", objective_history=history
    )


def residual_ratio(M, M_k) -> float:
    """Squared Frobenius residual ||M - M_k||^2 relative to ||M||^2."""
    M = np.asarray(M, dtype=float)
    M_k = np.asarray(M_k, dtype=float)
    if M.shape != M_k.shape:
        raise ValueError(f"shape mismatch: {M.shape} vs {M_k.shape}")
    denom = float(np.sum(M * M))
    if denom == 0.0:
        raise ValueError("residual ratio undefined for an all-zero matrix")
    diff = M - M_k
    return float(np.sum(diff * diff)) / denom


def rank_from_singular_values(s, theta) -> int:
    """Smallest k whose spectral tail energy ratio falls below theta."""
    s = np.asarray(s, dtype=float)
    theta = float(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    energy = s * s
    total = energy.sum()
    if total == 0.0:
        raise ValueError("rank selection undefined for an all-zero matrix")
    tail = total - np.cumsum(energy)
    below = np.nonzero(tail / total < theta)[0]
    # tail is 0 at full rank, so a qualifying k always exists
    return int(below[0]) + 1


def select_rank(M, theta) -> int:
    """Rank choice for M: smallest k with sum_{i>k} s_i^2 / sum s_i^2 < theta."""
    M = np.asarray(M, dtype=float)
    s = np.linalg.svd(M, compute_uv=False)
    return rank_from_singular_values(s, theta)
