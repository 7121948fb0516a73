"""Covariance-bound matrices over all variable pairs.

The upper (lower) bound matrix holds the exact upper (lower) covariance for
every variable pair, with upper/lower variances on the diagonal. These
matrices are symmetric but need not be positive semi-definite; the honest
PSD object is the set of mixture covariance matrices, which this module can
sample and check against the entrywise envelope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from covbounds.covariance import CovBounds, lower_cov, upper_cov
from covbounds.exceptions import NonSymmetricError
from covbounds.moments import ScenarioSet, extract_pair
from covbounds.validation import check_simplex
from covbounds.variance import lower_variance, upper_variance

# is_psd: smallest eigenvalue >= -PSD_DECISION_TOL * (1 + |trace|).
PSD_DECISION_TOL = 1e-9
SYM_TOL = 1e-9


def _first_primes(m: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < m:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


@dataclass(frozen=True)
class CovarianceBoundMatrices:
    """Entrywise covariance bounds with the witness mixture for every pair."""

    upper: np.ndarray
    lower: np.ndarray
    witnesses: tuple[tuple[CovBounds, ...], ...]

    @property
    def n_vars(self) -> int:
        return self.upper.shape[0]

    def to_dict(self) -> dict:
        n = self.n_vars
        wit = [
            {
                "i": i,
                "j": j,
                "upper": self.witnesses[i][j].upper.to_dict(),
                "lower": self.witnesses[i][j].lower.to_dict(),
            }
            for i in range(n)
            for j in range(i, n)
        ]
        return {
            "upper": self.upper.tolist(),
            "lower": self.lower.tolist(),
            "psd_upper": is_psd(self.upper),
            "psd_lower": is_psd(self.lower),
            "witnesses": wit,
        }


@dataclass(frozen=True)
class UncertaintySetReport:
    """Outcome of sampling the mixture covariance matrices."""

    samples: int
    all_psd: bool
    all_within_bounds: bool
    worst_eigenvalue: float
    worst_envelope_violation: float

    @property
    def passed(self) -> bool:
        return self.all_psd and self.all_within_bounds

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "all_psd": self.all_psd,
            "all_within_bounds": self.all_within_bounds,
            "worst_eigenvalue": self.worst_eigenvalue,
            "worst_envelope_violation": self.worst_envelope_violation,
            "passed": self.passed,
        }


def cov_bounds_matrix(scenario_set: ScenarioSet) -> CovarianceBoundMatrices:
    """Assemble both bound matrices for a validated scenario set.

    Diagonal entries come from the variance closed form with per-scenario
    second moments mean_i^2 + cov_ii; off-diagonals from the covariance scan.
    """
    n = scenario_set.n_vars
    upper = np.zeros((n, n))
    lower = np.zeros((n, n))
    cells: list[list[CovBounds | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        pair = extract_pair(scenario_set, i, i)
        d = pair.c + pair.a**2
        cell = CovBounds(upper=upper_variance(pair.a, d), lower=lower_variance(pair.a, d))
        upper[i, i] = cell.upper.value
        lower[i, i] = cell.lower.value
        cells[i][i] = cell
        for j in range(i + 1, n):
            pair = extract_pair(scenario_set, i, j)
            cell = CovBounds(upper=upper_cov(pair), lower=lower_cov(pair))
            upper[i, j] = upper[j, i] = cell.upper.value
            lower[i, j] = lower[j, i] = cell.lower.value
            cells[i][j] = cells[j][i] = cell
    witnesses = tuple(tuple(row) for row in cells)
    return CovarianceBoundMatrices(upper=upper, lower=lower, witnesses=witnesses)


def is_psd(matrix) -> bool:
    """Whether a symmetric matrix is positive semi-definite within tolerance."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSymmetricError(f"expected a square matrix, got shape {m.shape}")
    gap = np.abs(m - m.T)
    if np.any(gap > SYM_TOL * (1.0 + np.abs(m))):
        raise NonSymmetricError(f"matrix asymmetric (worst gap {float(gap.max()):.3e})")
    smallest = float(np.linalg.eigvalsh(0.5 * (m + m.T))[0])
    return smallest >= -PSD_DECISION_TOL * (1.0 + abs(float(np.trace(m))))


def mixture_covariance_matrix(scenario_set: ScenarioSet, lam) -> np.ndarray:
    """Covariance matrix of the scenario mixture with the given weights."""
    w = check_simplex(lam, scenario_set.n_scenarios)
    means = scenario_set.means()
    covs = scenario_set.covs()
    second = covs + np.einsum("ki,kj->kij", means, means)
    mbar = w @ means
    return np.einsum("k,kij->ij", w, second) - np.outer(mbar, mbar)


def simplex_sample(k: int, count: int, seed: int = 0) -> np.ndarray:
    """Deterministic low-discrepancy points on the k-simplex.

    Uses an additive-recurrence (Kronecker) sequence in the unit cube mapped
    through the ordered-spacings transform, prefixed with the vertices and
    the centroid so extreme points are always covered. The seed only shifts
    the sequence; identical seeds give identical points.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if k == 1:
        return np.ones((count, 1))
    fixed = [np.full(k, 1.0 / k)]
    fixed.extend(np.eye(k))
    fixed = np.array(fixed[: min(count, k + 1)])
    remaining = count - fixed.shape[0]
    if remaining <= 0:
        return fixed[:count]
    alpha = np.sqrt(np.array(_first_primes(k - 1), dtype=float))
    alpha -= np.floor(alpha)
    shift = np.random.default_rng(seed).random(k - 1)
    u = (shift + np.outer(np.arange(1, remaining + 1), alpha)) % 1.0
    u.sort(axis=1)
    padded = np.hstack([np.zeros((remaining, 1)), u, np.ones((remaining, 1))])
    points = np.diff(padded, axis=1)
    return np.vstack([fixed, points])


def uncertainty_set_check(
    scenario_set: ScenarioSet, samples: int, seed: int = 0, tol: float = 1e-9
) -> UncertaintySetReport:
    """Sample mixture covariance matrices; each must be PSD and inside the envelope."""
    bounds = cov_bounds_matrix(scenario_set)
    weights = simplex_sample(scenario_set.n_scenarios, samples, seed=seed)
    means = scenario_set.means()
    covs = scenario_set.covs()
    second = covs + np.einsum("ki,kj->kij", means, means)
    mbar = weights @ means
    mats = np.einsum("sk,kij->sij", weights, second) - np.einsum("si,sj->sij", mbar, mbar)

    eigs = np.linalg.eigvalsh(mats)
    worst_eig = float(eigs[:, 0].min())
    scale = 1.0 + np.abs(np.trace(mats, axis1=1, axis2=2))
    all_psd = bool(np.all(eigs[:, 0] >= -PSD_DECISION_TOL * scale))

    over = mats - bounds.upper[None, :, :]
    under = bounds.lower[None, :, :] - mats
    worst_violation = float(np.maximum(over, under).max())
    all_within = worst_violation <= tol

    return UncertaintySetReport(
        samples=weights.shape[0],
        all_psd=all_psd,
        all_within_bounds=bool(all_within),
        worst_eigenvalue=worst_eig,
        worst_envelope_violation=worst_violation,
    )
