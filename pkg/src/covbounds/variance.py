"""Exact upper and lower variances over K scenarios.

The upper variance is the inner minimum over the centering parameter of the
max of K parabolas ``alpha^2 - 2*mu_i*alpha + d_i`` (one per scenario, with
``d_i`` the scenario second moment). That min-max has a closed form: the best
candidate among per-scenario vertex values and pairwise crossing values, so
the whole computation is an O(K^2) scan. The lower variance is simply the
smallest per-scenario variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from covbounds.exceptions import NegativeVarianceError
from covbounds.moments import BoundResult
from covbounds.validation import as_vector, readonly, same_length

# Means closer than this (relative) are routed to the equal-mean branch to
# avoid dividing by a vanishing mean gap.
MEAN_EQ_TOL = 1e-12


def _means_equal(x: float, y: float) -> bool:
    return abs(x - y) <= MEAN_EQ_TOL * (1.0 + abs(x) + abs(y))


@dataclass(frozen=True)
class QuadFamily:
    """Family of parabolas alpha^2 - 2*mu_i*alpha + d_i."""

    mu: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", readonly(as_vector(self.mu, "mu")))
        object.__setattr__(self, "d", readonly(as_vector(self.d, "d")))
        same_length(("mu", self.mu), ("d", self.d))

    @property
    def k(self) -> int:
        return self.mu.size


def _crossing_point(mu_i, d_i, mu_j, d_j) -> float:
    """Argmin candidate for the pair (i, j): the clamped crossing of the two parabolas."""
    if _means_equal(mu_i, mu_j):
        return mu_i
    x = (d_j - d_i) / (2.0 * (mu_j - mu_i))
    return min(max(x, min(mu_i, mu_j)), max(mu_i, mu_j))


def _pair_candidate(mu_i, d_i, mu_j, d_j) -> tuple[float, float]:
    """Pair term (value, point). A crossing clamped at the first vertex must
    equal that scenario's own value bit-exactly, or round-off could fake a
    strict pair win over the single-scenario term."""
    x = _crossing_point(mu_i, d_i, mu_j, d_j)
    if x == mu_i:
        return float(d_i - mu_i * mu_i), float(x)
    return float(x * x - 2.0 * mu_i * x + d_i), float(x)


def min_max_quadratic(family: QuadFamily) -> tuple[float, float]:
    """Minimize max_i(alpha^2 - 2*mu_i*alpha + d_i) over alpha.

    Returns (value, argmin). The value is the largest of the per-scenario
    vertex values ``d_i - mu_i^2`` and the pairwise crossing values; the
    argmin reported is the vertex/crossing point of the winning term. Ties
    keep the earliest term, single-scenario terms before pairs.
    """
    mu, d = family.mu, family.d
    best_value = -np.inf
    best_alpha = 0.0
    for i in range(family.k):
        v = d[i] - mu[i] * mu[i]
        if v > best_value:
            best_value, best_alpha = v, mu[i]
    for i in range(family.k):
        for j in range(i + 1, family.k):
            v, x = _pair_candidate(mu[i], d[i], mu[j], d[j])
            if v > best_value:
                best_value, best_alpha = v, x
    return float(best_value), float(best_alpha)


def _check_moments(means, second_moments) -> tuple[np.ndarray, np.ndarray]:
    mu = as_vector(means, "means")
    d = as_vector(second_moments, "second_moments")
    same_length(("means", mu), ("second_moments", d))
    slack = d - mu * mu
    if np.any(slack < -1e-9):
        bad = int(np.argmin(slack))
        raise NegativeVarianceError(
            f"scenario {bad}: second moment {d[bad]} < mean^2 {mu[bad] ** 2}"
        )
    return mu, d


def upper_variance(means, second_moments) -> BoundResult:
    """Largest variance over all scenario mixtures, with its witness.

    The witness is either a single scenario index or a pair (i, j) with the
    mixture weight on i recovered from the optimal centering point.
    """
    mu, d = _check_moments(means, second_moments)
    k = mu.size
    best = BoundResult(float(d[0] - mu[0] ** 2), 0)
    for i in range(1, k):
        v = float(d[i] - mu[i] * mu[i])
        if v > best.value:
            best = BoundResult(v, i)
    for i in range(k):
        for j in range(i + 1, k):
            v, x = _pair_candidate(mu[i], d[i], mu[j], d[j])
            if v > best.value:
                # Strict improvement over every single scenario forces an
                # interior crossing, so the weight is well defined.
                lam = (x - mu[j]) / (mu[i] - mu[j])
                best = BoundResult(v, i, j, float(min(max(lam, 0.0), 1.0)))
    return best


def lower_variance(means, second_moments) -> BoundResult:
    """Smallest variance over all scenario mixtures: min of scenario variances."""
    mu, d = _check_moments(means, second_moments)
    variances = d - mu * mu
    i = int(np.argmin(variances))
    return BoundResult(float(variances[i]), i)


def upper_variance_from_variances(means, variances) -> BoundResult:
    """Convenience wrapper taking (mean, variance) instead of (mean, second moment)."""
    mu = as_vector(means, "means")
    var = as_vector(variances, "variances")
    same_length(("means", mu), ("variances", var))
    return upper_variance(mu, var + mu * mu)


def lower_variance_from_variances(means, variances) -> BoundResult:
    """Convenience wrapper taking (mean, variance) instead of (mean, second moment)."""
    mu = as_vector(means, "means")
    var = as_vector(variances, "variances")
    same_length(("means", mu), ("variances", var))
    return lower_variance(mu, var + mu * mu)


def mixture_variance(means, second_moments, weights: np.ndarray) -> float:
    """Variance of the scenario mixture with the given simplex weights."""
    mu = as_vector(means, "means")
    d = as_vector(second_moments, "second_moments")
    w = np.asarray(weights, dtype=float)
    return float(w @ d - (w @ mu) ** 2)
