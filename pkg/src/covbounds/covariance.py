"""Exact upper and lower covariances over K scenarios.

For two scenarios, the largest covariance over all mixtures has a closed
form: the mixture covariance at weight lam on scenario i is

    lam*c_i + (1-lam)*c_j + lam*(1-lam)*(a_i-a_j)*(b_i-b_j),

a quadratic in lam whose constrained maximum is either an endpoint (a single
scenario) or the clamped stationary point. Under K scenarios the upper
covariance is the maximum of these pairwise values, so an O(K^2) scan is
exact. The lower covariance follows by negating the second variable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from covbounds.exceptions import (
    MeansNotCertainError,
    NonFiniteError,
    NonPositiveVarianceError,
)
from covbounds.moments import BoundResult, PairMoments
from covbounds.validation import check_simplex, near_equal


@dataclass(frozen=True)
class CovBounds:
    """Upper and lower covariance with their witnesses."""

    upper: BoundResult
    lower: BoundResult


@dataclass(frozen=True)
class BoundsReport:
    """Interval geometry around a covariance bound.

    rho/delta are the midpoints/widths of the two mean intervals; m_upper and
    m_lower are the extreme products of the interval endpoints. The bracket
    is the a-priori window that must contain the upper covariance.
    """

    rho_x: float
    rho_y: float
    delta_x: float
    delta_y: float
    m_upper: float
    m_lower: float
    bracket_low: float
    bracket_high: float


def _pair_term(ai, bi, ci, aj, bj, cj) -> tuple[float, float]:
    """Best mixture of two scenarios: (value, weight on the first).

    Degenerate gaps (equal first or second means) make the mixture covariance
    linear in the weight, so the value falls back to the first scenario's
    covariance; the surrounding max over single scenarios then settles it.
    """
    if near_equal(ai, aj) or near_equal(bi, bj):
        return float(ci), 1.0
    x = (cj - ci) / (2.0 * (aj - ai)) + 0.5 * (bi + bj)
    x = min(max(x, min(bi, bj)), max(bi, bj))
    t = (x - bi) / (bj - bi)
    t = min(max(t, 0.0), 1.0)
    # Exact values at the clamp endpoints, where the term must reduce to a
    # single scenario; otherwise round-off could fake a strict pair win.
    if t == 0.0:
        return float(ci), 1.0
    if t == 1.0:
        return float(cj), 0.0
    value = ci + t * (cj - ci) + t * (1.0 - t) * (aj - ai) * (bj - bi)
    return float(value), float(1.0 - t)


def pair_upper_cov(ai, bi, ci, aj, bj, cj) -> BoundResult:
    """Upper covariance under exactly two scenarios given as moment triples."""
    vals = np.array([ai, bi, ci, aj, bj, cj], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("pair moments contain non-finite entries")
    best = BoundResult(float(ci), 0)
    if cj > best.value:
        best = BoundResult(float(cj), 1)
    value, lam = _pair_term(ai, bi, ci, aj, bj, cj)
    if value > best.value:
        best = BoundResult(value, 0, 1, lam)
    return best


def upper_cov(p: PairMoments) -> BoundResult:
    """Largest covariance over all scenario mixtures, with its witness.

    Single-scenario witnesses are preferred over pair witnesses at equal
    value; remaining ties keep the lexicographically smallest indices.
    """
    a, b, c = p.a, p.b, p.c
    best = BoundResult(float(c[0]), 0)
    for i in range(1, p.k):
        if c[i] > best.value:
            best = BoundResult(float(c[i]), i)
    for i in range(p.k):
        for j in range(i + 1, p.k):
            value, lam = _pair_term(a[i], b[i], c[i], a[j], b[j], c[j])
            if value > best.value:
                best = BoundResult(value, i, j, lam)
    return best


def lower_cov(p: PairMoments) -> BoundResult:
    """Smallest covariance over all scenario mixtures: minus the upper bound of (X, -Y)."""
    flipped = upper_cov(p.negated_second())
    return BoundResult(-flipped.value, flipped.i, flipped.j, flipped.lam)


def cov_bounds(p: PairMoments) -> CovBounds:
    """Both covariance bounds for one pair."""
    return CovBounds(upper=upper_cov(p), lower=lower_cov(p))


def mixture_cov(p: PairMoments, lam) -> float:
    """Covariance of the scenario mixture with the given simplex weights."""
    w = check_simplex(lam, p.k)
    return float(w @ p.product_moments() - (w @ p.a) * (w @ p.b))


def mean_certain_upper_cov(p: PairMoments) -> float:
    """Upper covariance when the first variable's mean is scenario-independent.

    With a certain mean the cross term vanishes for every mixture, so the
    bound is just the largest scenario covariance.
    """
    a0 = p.a[0]
    if not all(near_equal(ai, a0) for ai in p.a):
        raise MeansNotCertainError(f"means of X vary across scenarios: {p.a.tolist()}")
    return float(p.c.max())


def bounds_report(p: PairMoments) -> BoundsReport:
    """Interval-based bracket guaranteed to contain the upper covariance."""
    ix, iy = p.x_interval(), p.y_interval()
    rho_x, rho_y = ix.midpoint, iy.midpoint
    delta_x, delta_y = ix.width, iy.width
    corners = [
        ix.lo * iy.lo,
        ix.hi * iy.lo,
        ix.lo * iy.hi,
        ix.hi * iy.hi,
    ]
    center = float(np.max(p.c + (p.a - rho_x) * (p.b - rho_y)))
    margin = 0.25 * delta_x * delta_y
    return BoundsReport(
        rho_x=rho_x,
        rho_y=rho_y,
        delta_x=delta_x,
        delta_y=delta_y,
        m_upper=float(max(corners)),
        m_lower=float(min(corners)),
        bracket_low=center - margin,
        bracket_high=center + margin,
    )


def correlation_bounds(var_x: float, var_y: float,
                       e_xy_upper: float, e_xy_lower: float) -> tuple[float, float]:
    """Upper/lower correlation for zero-mean, variance-certain variables."""
    if var_x <= 0.0 or var_y <= 0.0:
        raise NonPositiveVarianceError(f"variances must be positive, got {var_x}, {var_y}")
    scale = np.sqrt(var_x * var_y)
    return float(e_xy_upper / scale), float(e_xy_lower / scale)
