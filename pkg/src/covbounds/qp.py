"""Exact maximization of lam'k - (lam'm)(lam'n) over the probability simplex.

The quadratic form (mn' + nm')/2 may be indefinite, yet the problem always
has an optimizer supported on at most two coordinates: it is the same
structure as the upper covariance of a pair of variables whose scenario
means are m and n and whose cross second moments are k. The solver therefore
runs the pairwise covariance scan in (m, n, k - m*n) space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from covbounds.covariance import _pair_term
from covbounds.moments import PairMoments
from covbounds.validation import as_vector, check_simplex, readonly, same_length

INERTIA_TOL = 1e-9


@dataclass(frozen=True)
class BilinearQp:
    """Problem data: maximize lam'k - (lam'm)(lam'n) on the simplex."""

    m: np.ndarray
    n: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "m", readonly(as_vector(self.m, "m")))
        object.__setattr__(self, "n", readonly(as_vector(self.n, "n")))
        object.__setattr__(self, "k", readonly(as_vector(self.k, "k")))
        same_length(("m", self.m), ("n", self.n), ("k", self.k))

    @property
    def size(self) -> int:
        return self.m.size

    def as_pair_moments(self) -> PairMoments:
        """Equivalent covariance-space data: c = k - m*n entrywise."""
        return PairMoments(self.m, self.n, self.k - self.m * self.n)


@dataclass(frozen=True)
class QpSolution:
    """Optimal value and optimizer; the support never exceeds two indices."""

    value: float
    lam: np.ndarray
    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", readonly(np.asarray(self.lam, dtype=float)))
        object.__setattr__(self, "support", tuple(int(s) for s in self.support))

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "lambda": self.lam.tolist(),
            "support": list(self.support),
        }


def objective(qp: BilinearQp, lam) -> float:
    """Evaluate lam'k - (lam'm)(lam'n) at a simplex point."""
    w = check_simplex(lam, qp.size)
    return float(w @ qp.k - (w @ qp.m) * (w @ qp.n))


def solve(qp: BilinearQp) -> QpSolution:
    """Exact solution via the pairwise scan; ties keep the earliest support."""
    c = qp.k - qp.m * qp.n
    best_value = float(c[0])
    best: tuple = (0,)
    for i in range(1, qp.size):
        if c[i] > best_value:
            best_value, best = float(c[i]), (i,)
    for i in range(qp.size):
        for j in range(i + 1, qp.size):
            value, wi = _pair_term(qp.m[i], qp.n[i], c[i], qp.m[j], qp.n[j], c[j])
            if value > best_value:
                best_value, best = value, (i, j, wi)
    lam = np.zeros(qp.size)
    if len(best) == 1:
        lam[best[0]] = 1.0
    else:
        i, j, wi = best
        lam[i] = wi
        lam[j] = 1.0 - wi
    support = tuple(int(t) for t in np.nonzero(lam)[0])
    return QpSolution(value=best_value, lam=lam, support=support)


def q_matrix(qp: BilinearQp) -> tuple[np.ndarray, tuple[int, int, int]]:
    """Quadratic-form matrix (mn' + nm')/2 and its inertia (pos, neg, zero)."""
    q = 0.5 * (np.outer(qp.m, qp.n) + np.outer(qp.n, qp.m))
    eigs = np.linalg.eigvalsh(q)
    tol = INERTIA_TOL * (1.0 + abs(float(np.trace(q))))
    pos = int(np.sum(eigs > tol))
    neg = int(np.sum(eigs < -tol))
    zero = int(eigs.size - pos - neg)
    return q, (pos, neg, zero)
