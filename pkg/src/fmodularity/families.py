"""Divergence families.

Each family packages a convex generator f (with f(1) = 0) together with
the slope transform applied to a density ratio and the convex conjugate
evaluated along that slope.  Those two transforms are what the dual
(variational) form of the divergence needs: for a candidate ratio D the
dual reads  E_p[slope(D)] - E_q[conjugate_slope(D)],  with equality to
the divergence at D = p/q.

All logs are natural, so KL and Jensen-Shannon values come out in nats.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "DivergenceFamily",
    "NumericalDomainError",
    "available_families",
    "get_family",
]


class NumericalDomainError(ValueError):
    """An input left the numerical domain of a divergence computation."""


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NumericalDomainError("input contains NaN or infinity")
    return arr


def _match_input(out, like):
    # scalar in, scalar out
    if np.isscalar(like) or np.ndim(like) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class DivergenceFamily:
    """One f-divergence: generator plus the two dual-side transforms."""

    name: str
    requires_positive: bool
    _generator: Callable = field(repr=False)
    _slope: Callable = field(repr=False)
    _conjugate_slope: Callable = field(repr=False)

    def generator(self, t):
        """Evaluate f(t) for t >= 0, using the right limit at t = 0."""
        arr = _as_float_array(t)
        if np.any(arr < 0):
            raise NumericalDomainError(
                f"{self.name}: generator argument must be nonnegative"
            )
        return _match_input(self._generator(arr), t)

    def _check_ratio(self, arr):
        if self.requires_positive and np.any(arr <= 0):
            raise NumericalDomainError(
                f"{self.name}: distinguisher values must be strictly positive"
            )

    def slope(self, d):
        """Derivative of the generator evaluated at a ratio d."""
        arr = _as_float_array(d)
        self._check_ratio(arr)
        return _match_input(self._slope(arr), d)

    def conjugate_slope(self, d):
        """Convex conjugate of the generator evaluated at slope(d).

        Satisfies  conjugate_slope(t) = t * slope(t) - generator(t)  on the
        interior of the domain, which is the identity the dual form relies on.
        """
        arr = _as_float_array(d)
        self._check_ratio(arr)
        return _match_input(self._conjugate_slope(arr), d)


def _safe_tlogt(t):
    # t log t with the 0 log 0 := 0 convention; inner where keeps log off 0
    pos = t > 0
    return np.where(pos, t * np.log(np.where(pos, t, 1.0)), 0.0)


def _tvd_generator(t):
    return np.abs(t - 1.0)


def _tvd_slope(d):
    # sign(log d) with the tie at d = 1 resolved to 0
    return np.sign(d - 1.0)


def _kl_generator(t):
    return _safe_tlogt(t)


def _kl_slope(d):
    return np.log(d) + 1.0


def _kl_conjugate_slope(d):
    return np.array(d, copy=True)


def _pearson_generator(t):
    return (t - 1.0) ** 2


def _pearson_slope(d):
    return 2.0 * (d - 1.0)


def _pearson_conjugate_slope(d):
    return d * d - 1.0


def _js_generator(t):
    # t log t - (t + 1) log((t + 1) / 2); right limit log 2 at t = 0
    return _safe_tlogt(t) - (t + 1.0) * (np.log(t + 1.0) - np.log(2.0))


def _js_slope(d):
    return np.log(2.0) + np.log(d) - np.log1p(d)


def _js_conjugate_slope(d):
    return np.log1p(d) - np.log(2.0)


def _hellinger_generator(t):
    return (np.sqrt(t) - 1.0) ** 2


def _hellinger_slope(d):
    return 1.0 - 1.0 / np.sqrt(d)


def _hellinger_conjugate_slope(d):
    return np.sqrt(d) - 1.0


# Pearson accepts any real distinguisher: its generator is a polynomial, so
# slope and conjugate_slope extend off (0, inf) and the dual stays a valid
# lower bound.  That matters for SVD factorizations, whose entries can dip
# below zero.
_REGISTRY = {
    "tvd": DivergenceFamily("tvd", True, _tvd_generator, _tvd_slope, _tvd_slope),
    "kl": DivergenceFamily("kl", True, _kl_generator, _kl_slope, _kl_conjugate_slope),
    "pearson": DivergenceFamily(
        "pearson", False, _pearson_generator, _pearson_slope, _pearson_conjugate_slope
    ),
    "js": DivergenceFamily("js", True, _js_generator, _js_slope, _js_conjugate_slope),
    "hellinger": DivergenceFamily(
        "hellinger",
        True,
        _hellinger_generator,
        _hellinger_slope,
        _hellinger_conjugate_slope,
    ),
}

_ALIASES = {
    "total-variation": "tvd",
    "total_variation": "tvd",
    "tv": "tvd",
    "kullback-leibler": "kl",
    "kullback_leibler": "kl",
    "chi2": "pearson",
    "chi-squared": "pearson",
    "pearson-chi2": "pearson",
    "jensen-shannon": "js",
    "jensen_shannon": "js",
    "squared-hellinger": "hellinger",
    "squared_hellinger": "hellinger",
    "sh": "hellinger",
}


def available_families():
    """Canonical family names, in registry order."""
    return list(_REGISTRY)


def get_family(name) -> DivergenceFamily:
    """Look up a family by name or alias; passes through family instances."""
    if isinstance(name, DivergenceFamily):
        return name
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return _REGISTRY[key]
    except KeyError:
        raise ValueError(
            f"unknown divergence family {name!r}; choose from {available_families()}"
        ) from None
