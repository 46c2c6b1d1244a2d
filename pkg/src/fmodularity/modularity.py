"""f-modularity: dual objective, the low-rank approximation pipeline, and
the sign/Newman special cases for total variation."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .families import get_family
from .lowrank import nmf, rank_from_singular_values, residual_ratio, truncated_svd
from .network import FrequencyMatrix, newman_null, null_model

__all__ = [
    "ModularityReport",
    "dual_objective",
    "optimal_distinguisher",
    "f_modularity",
    "tvd_modularity_unconstrained",
    "newman_modularity",
    "tvd_bipartition",
    "pearson_weighted_identity",
]

# lower clamp applied to reconstructed distinguishers of positive-domain families
DOMAIN_FLOOR = 1e-9


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, FrequencyMatrix):
        return x.F
    return np.asarray(x, dtype=float)


def dual_objective(family, F, J, D) -> float:
    """Variational score sum[ slope(D)*F - conjugate_slope(D)*J ].

    For any D in the family's domain this lower-bounds the divergence
    between F and J, with equality at D = F/J.
    """
    fam = get_family(family)
    F = _as_matrix(F)
    J = _as_matrix(J)
    D = np.asarray(D, dtype=float)
    if not (F.shape == J.shape == D.shape):
        raise ValueError(
            f"shape mismatch: F {F.shape}, J {J.shape}, D {D.shape}"
        )
    return float(np.sum(fam.slope(D) * F - fam.conjugate_slope(D) * J))


def optimal_distinguisher(F, J, epsilon=1e-9) -> np.ndarray:
    """Ratio F / max(J, epsilon); the unconstrained dual maximizer."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    F = _as_matrix(F)
    J = _as_matrix(J)
    if F.shape != J.shape:
        raise ValueError(f"shape mismatch: {F.shape} vs {J.shape}")
    return F / np.maximum(J, epsilon)


@dataclass
class ModularityReport:
    """Outcome of one f-modularity evaluation."""

    value: float
    family: str
    method: str
    rank_used: int
    residual_ratio: float
    distinguisher_min: float
    distinguisher_max: float
    distinguisher_mean: float
    fallback_applied: bool

    def to_dict(self):
        return {
            "value": self.value,
            "family": self.family,
            "method": self.method,
            "rank_used": self.rank_used,
            "residual_ratio": self.residual_ratio,
            "distinguisher_min": self.distinguisher_min,
            "distinguisher_max": self.distinguisher_max,
            "distinguisher_mean": self.distinguisher_mean,
            "fallback_applied": self.fallback_applied,
        }


def _report(value, family, method, rank_used, resid, D, fallback):
    return ModularityReport(
        value=float(value),
        family=family,
        method=method,
        rank_used=int(rank_used),
        residual_ratio=float(resid),
        distinguisher_min=float(D.min()),
        distinguisher_max=float(D.max()),
        distinguisher_mean=float(D.mean()),
        fallback_applied=bool(fallback),
    )


def f_modularity(
    fm: FrequencyMatrix,
    family,
    theta=0.9,
    epsilon=1e-9,
    rank: Optional[int] = None,
    method="auto",
    nmf_max_iter=500,
    nmf_tol=1e-6,
    seed=0,
) -> ModularityReport:
    """Estimate modularity as a rank-constrained dual bound.

    Pipeline: unbiased null J, distinguisher D* = F/max(J, epsilon),
    rank chosen from the SVD spectrum of D* (unless overridden), low-rank
    reconstruction by SVD or NMF, then the dual objective.  Total
    variation skips the factorization: its maximizer is the sign pattern
    of F - J, evaluated in closed form.

    The reported value is floored at 0, since the all-ones distinguisher
    is feasible at every rank and scores exactly 0.
    """
    if not isinstance(fm, FrequencyMatrix):
        raise TypeError("fm must be a FrequencyMatrix")
    fam = get_family(family)
    if method not in ("auto", "svd", "nmf"):
        raise ValueError(f"unknown method {method!r}")
    F = fm.F
    J = null_model(fm)

    if fam.name == "tvd":
        S = np.sign(F - J)
        value = float(np.abs(F - J).sum())
        return _report(value, fam.name, "sign", 0, 0.0, S, False)

    resolved = method
    if resolved == "auto":
        resolved = "svd" if fam.name == "pearson" else "nmf"

    D_star = optimal_distinguisher(F, J, epsilon)
    spectrum = np.linalg.svd(D_star, compute_uv=False)
    if rank is None:
        r = rank_from_singular_values(spectrum, theta)
    else:
        r = int(rank)
        if not 1 <= r <= min(F.shape):
            raise ValueError(f"rank {r} out of range for shape {F.shape}")

    if resolved == "svd":
        factors = truncated_svd(D_star, r)
    else:
        factors = nmf(D_star, r, max_iter=nmf_max_iter, tol=nmf_tol, seed=seed)
    D_r = factors.reconstruct()
    resid = residual_ratio(D_star, D_r)
    if fam.requires_positive:
        D_r = np.maximum(D_r, DOMAIN_FLOOR)

    raw = dual_objective(fam, F, J, D_r)
    fallback = raw < 0.0
    return _report(max(raw, 0.0), fam.name, resolved, r, resid, D_r, fallback)


def tvd_modularity_unconstrained(F, J) -> float:
    """Total-variation score without rank constraints: sum |F - J|."""
    F = _as_matrix(F)
    J = _as_matrix(J)
    if F.shape != J.shape:
        raise ValueError(f"shape mismatch: {F.shape} vs {J.shape}")
    return float(np.abs(F - J).sum())


def _null_for(fm: FrequencyMatrix, variant: str) -> np.ndarray:
    if variant == "unbiased":
        return null_model(fm)
    if variant == "newman":
        return newman_null(fm)
    raise ValueError(f"null variant must be 'unbiased' or 'newman', got {variant!r}")


def newman_modularity(fm: FrequencyMatrix, partition, null="newman") -> float:
    """Community score Q = sum over same-community pairs of (F - J).

    Expects a square frequency matrix (an induced undirected graph) and
    one community id per vertex.
    """
    F = fm.F
    if F.shape[0] != F.shape[1]:
        raise ValueError("newman_modularity needs a square frequency matrix")
    g = np.asarray(partition)
    if g.ndim != 1 or g.shape[0] != F.shape[0]:
        raise ValueError(
            f"partition length {g.shape} does not match {F.shape[0]} vertices"
        )
    J = _null_for(fm, null)
    same = g[:, None] == g[None, :]
    return float((F - J)[same].sum())


def _greedy_flips(M, s):
    diag = np.diag(M).copy()
    Ms = M @ s
    while True:
        gains = -4.0 * s * Ms + 4.0 * diag
        best = int(np.argmax(gains))
        if gains[best] <= 1e-15:
            break
        s[best] = -s[best]
        Ms = M @ s
    return s, float(s @ M @ s)


def tvd_bipartition(fm: FrequencyMatrix, null="unbiased"):
    """Two-community split maximizing s^T (F - J) s over sign vectors.

    Heuristic: greedy single flips run from the signs of the leading
    eigenvector of F - J and from the all-ones vector (the trivial split
    scores exactly 0, so the result is never negative).  Returns
    (s, objective) for the better start.
    """
    F = fm.F
    if F.shape[0] != F.shape[1] or np.any(np.abs(F - F.T) > 1e-12):
        raise ValueError("tvd_bipartition needs a symmetric frequency matrix")
    M = F - _null_for(fm, null)
    M = 0.5 * (M + M.T)  # symmetrize rounding dust so eigh is exact
    w, V = np.linalg.eigh(M)
    lead = V[:, np.argmax(w)]
    starts = [np.where(lead >= 0, 1.0, -1.0), np.ones(F.shape[0])]
    best_s, best_obj = None, -np.inf
    for start in starts:
        s, obj = _greedy_flips(M, start)
        if obj > best_obj:
            best_s, best_obj = s, obj
    if best_obj <= 0.0:
        # all-ones scores sum(F) - sum(J) = 0 exactly, minus rounding dust
        return np.ones(F.shape[0], dtype=int), 0.0
    return best_s.astype(int), best_obj


def pearson_weighted_identity(F, J, D):
    """Both sides of the weighted-least-squares form of the Pearson dual.

    lhs is the dual objective; rhs = -1 + sum[ -J (D - F/J)^2 + F^2/J ].
    The two agree whenever F and J each sum to 1 and J > 0 everywhere.
    """
    F = _as_matrix(F)
    J = _as_matrix(J)
    D = np.asarray(D, dtype=float)
    if np.any(J <= 0):
        raise ValueError("weighted form needs J > 0 entrywise")
    lhs = dual_objective("pearson", F, J, D)
    ratio = F / J
    rhs = float(-1.0 + np.sum(-J * (D - ratio) ** 2 + F * ratio))
    return lhs, rhs
