"""f-divergences between distributions and the mutual information they induce."""

import numpy as np

from .families import NumericalDomainError, get_family
from .validation import check_channel, check_distribution

__all__ = [
    "InfiniteDivergenceError",
    "f_divergence",
    "f_mutual_information",
    "marginal_product",
    "apply_channel",
]


class InfiniteDivergenceError(NumericalDomainError):
    """The reference distribution vanishes where the other does not."""


def f_divergence(family, p, q, validate=True):
    """Divergence d_f(p; q) = sum_x q(x) f(p(x)/q(x)).

    Cells with q = 0 contribute 0 when p = 0 there as well, and make the
    divergence infinite otherwise (reported as InfiniteDivergenceError).
    Cells with p = 0 < q use the right limit f(0).
    """
    fam = get_family(family)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    if validate:
        check_distribution(p, name="p")
        check_distribution(q, name="q")
    support = q > 0
    if np.any(p[~support] > 0):
        raise InfiniteDivergenceError(
            f"{fam.name}: p has mass where q vanishes; divergence is infinite"
        )
    qs = q[support]
    total = float(np.sum(qs * fam.generator(p[support] / qs)))
    return total if total > 0.0 else 0.0


def marginal_product(P):
    """Outer product of the row and column marginals of a joint matrix."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2:
        raise ValueError("joint distribution must be a 2-d matrix")
    return np.outer(P.sum(axis=1), P.sum(axis=0))


def f_mutual_information(family, P, validate=True):
    """d_f between a joint distribution and the product of its marginals.

    A zero marginal forces the corresponding row/column of P to zero, so
    those cells drop out and the result stays finite.
    """
    P = np.asarray(P, dtype=float)
    if validate:
        check_distribution(P, name="P")
    if P.ndim != 2:
        raise ValueError("joint distribution must be a 2-d matrix")
    return f_divergence(family, P, marginal_product(P), validate=False)


def apply_channel(P, K, side="rows"):
    """Push a joint distribution through a column-stochastic kernel.

    side="rows" returns K @ P (the kernel acts on the row variable);
    side="cols" returns P @ K.T.  Either way the output sums to 1.
    """
    P = np.asarray(P, dtype=float)
    K = check_channel(K)
    if P.ndim != 2:
        raise ValueError("joint distribution must be a 2-d matrix")
    if side == "rows":
        if K.shape[1] != P.shape[0]:
            raise ValueError(
                f"kernel acts on {K.shape[1]} rows but P has {P.shape[0]}"
            )
        return K @ P
    if side == "cols":
        if K.shape[1] != P.shape[1]:
            raise ValueError(
                f"kernel acts on {K.shape[1]} cols but P has {P.shape[1]}"
            )
        return P @ K.T
    raise ValueError(f"side must be 'rows' or 'cols', got {side!r}")
