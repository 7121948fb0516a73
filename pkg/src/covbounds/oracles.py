"""Brute-force grid references used to validate every closed form.

These evaluate the defining optimizations directly on finite grids: the
two-axis centering search for covariance bounds, the simplex lattice for the
mixture envelope, and the sum/difference reformulation whose inner
minimization is exact. They are test instruments: slow, simple and
independent of the closed-form code paths they check (the one exception is
the sum/difference oracle, which deliberately reuses the scalar min-max
solve as its inner step).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from covbounds.exceptions import BadBoxError, TooManyScenariosError
from covbounds.moments import PairMoments
from covbounds.validation import as_vector, readonly, same_length
from covbounds.variance import QuadFamily, min_max_quadratic

# Guard for grid_simplex_envelope: refuse lattices larger than this.
MAX_LATTICE_POINTS = 20_000_000


@dataclass(frozen=True)
class GridSpec:
    """Rectangular search grid: steps subintervals per axis, both endpoints included.

    A zero-width axis collapses to a single grid point.
    """

    steps: int
    box: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        if self.steps < 2:
            raise BadBoxError(f"steps must be >= 2, got {self.steps}")
        (x_lo, x_hi), (y_lo, y_hi) = self.box
        if not (x_lo <= x_hi and y_lo <= y_hi):
            raise BadBoxError(f"box endpoints inverted: {self.box}")

    @classmethod
    def for_pair(cls, p: PairMoments, steps: int, widen: float = 1.0) -> "GridSpec":
        """Box covering the two mean intervals, optionally widened about their midpoints."""
        if widen < 1.0:
            raise BadBoxError(f"widen factor must be >= 1, got {widen}")
        axes = []
        for interval in (p.x_interval(), p.y_interval()):
            half = 0.5 * interval.width * widen
            axes.append((interval.midpoint - half, interval.midpoint + half))
        return cls(steps=steps, box=(axes[0], axes[1]))

    def axis_points(self, axis: int) -> np.ndarray:
        lo, hi = self.box[axis]
        if lo == hi:
            return np.array([lo])
        return np.linspace(lo, hi, self.steps + 1)


def upper_expectation_bilinear(p: PairMoments, mu1: float, mu2: float) -> float:
    """sup over scenarios of E[(X - mu1)(Y - mu2)] = max_i(c_i + (a_i-mu1)(b_i-mu2))."""
    return float(np.max(p.c + (p.a - mu1) * (p.b - mu2)))


def lower_expectation_bilinear(p: PairMoments, mu1: float, mu2: float) -> float:
    """inf over scenarios of E[(X - mu1)(Y - mu2)]."""
    return float(np.min(p.c + (p.a - mu1) * (p.b - mu2)))


def _bilinear_grid(p: PairMoments, g: GridSpec) -> np.ndarray:
    """Matrix F[r, s] = max_i(c_i + (a_i - x_r)(b_i - y_s)) over the grid."""
    xs = g.axis_points(0)
    ys = g.axis_points(1)
    f = np.full((xs.size, ys.size), -np.inf)
    for ai, bi, ci in zip(p.a, p.b, p.c):
        np.maximum(f, ci + np.outer(ai - xs, bi - ys), out=f)
    return f


def grid_maximin_cov(p: PairMoments, g: GridSpec, order: str = "maximin") -> float:
    """Grid search of the two-axis centering optimization.

    ``maximin`` nests max over the second axis of min over the first and
    approximates the upper covariance; ``minimax`` swaps the nesting and in
    general lands strictly above it. The box must cover both mean intervals.
    """
    ix, iy = p.x_interval(), p.y_interval()
    slack = 1e-12 * (1.0 + np.abs(np.array(g.box)).max())
    if g.box[0][0] > ix.lo + slack or g.box[0][1] < ix.hi - slack:
        raise BadBoxError(f"axis-1 box {g.box[0]} does not cover mean interval {(ix.lo, ix.hi)}")
    if g.box[1][0] > iy.lo + slack or g.box[1][1] < iy.hi - slack:
        raise BadBoxError(f"axis-2 box {g.box[1]} does not cover mean interval {(iy.lo, iy.hi)}")
    f = _bilinear_grid(p, g)
    if order == "maximin":
        return float(np.max(np.min(f, axis=0)))
    if order == "minimax":
        return float(np.min(np.max(f, axis=1)))
    raise ValueError(f"order must be 'maximin' or 'minimax', got {order!r}")


def _compositions(k: int, n: int) -> np.ndarray:
    """Integer vectors of length k with nonnegative entries summing to n."""
    if k == 1:
        return np.array([[n]], dtype=np.int64)
    if k == 2:
        first = np.arange(n + 1, dtype=np.int64)
        return np.column_stack([first, n - first])
    blocks = []
    for first in range(n + 1):
        rest = _compositions(k - 1, n - first)
        blocks.append(
            np.column_stack([np.full(rest.shape[0], first, dtype=np.int64), rest])
        )
    return np.vstack(blocks)


@lru_cache(maxsize=16)
def _compositions_cached(k: int, n: int) -> np.ndarray:
    arr = _compositions(k, n)
    arr.flags.writeable = False
    return arr


def simplex_lattice(k: int, subdivisions: int) -> np.ndarray:
    """All weight vectors with entries i/subdivisions summing to 1, shape (P, k)."""
    return _compositions_cached(k, subdivisions) / float(subdivisions)


def _lattice_size(k: int, subdivisions: int) -> int:
    return comb(subdivisions + k - 1, k - 1)


def grid_simplex_envelope(p: PairMoments, step: float, sense: str = "sup") -> float:
    """Extremal mixture covariance over a simplex lattice of the given step.

    Guarded against blow-up: at most five scenarios, step no coarser than
    0.1, and the lattice size itself is capped.
    """
    if p.k > 5:
        raise TooManyScenariosError(f"simplex lattice limited to K <= 5, got {p.k}")
    if not (0.0 < step <= 0.1):
        raise ValueError(f"step must be in (0, 0.1], got {step}")
    subdivisions = max(1, round(1.0 / step))
    if _lattice_size(p.k, subdivisions) > MAX_LATTICE_POINTS:
        raise TooManyScenariosError(
            f"lattice with K={p.k}, step={step} has {_lattice_size(p.k, subdivisions)} points"
        )
    lam = simplex_lattice(p.k, subdivisions)
    vals = lam @ p.product_moments() - (lam @ p.a) * (lam @ p.b)
    return float(vals.max() if sense == "sup" else vals.min())


@dataclass(frozen=True)
class UvMoments:
    """Per-scenario data for the sum/difference route.

    mu and nu are the scenario means of (X+Y)/2 and (X-Y)/2; kappa is the
    scenario second cross moment E[XY].
    """

    mu: np.ndarray
    nu: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", readonly(as_vector(self.mu, "mu")))
        object.__setattr__(self, "nu", readonly(as_vector(self.nu, "nu")))
        object.__setattr__(self, "kappa", readonly(as_vector(self.kappa, "kappa")))
        same_length(("mu", self.mu), ("nu", self.nu), ("kappa", self.kappa))

    @classmethod
    def from_pair(cls, p: PairMoments) -> "UvMoments":
        return cls(0.5 * (p.a + p.b), 0.5 * (p.a - p.b), p.product_moments())


def grid_uv_maximin(uv: UvMoments, g: GridSpec) -> float:
    """Upper covariance via the sum/difference representation.

    For each grid point beta on the second axis the inner minimization over
    alpha is solved exactly by the scalar min-max closed form on the family
    (mu_i, kappa_i + 2*nu_i*beta - beta^2); the outer maximum runs over the
    beta grid. Only the second axis of the box is consulted.
    """
    lo, hi = g.box[1]
    nu_lo, nu_hi = float(uv.nu.min()), float(uv.nu.max())
    slack = 1e-12 * (1.0 + max(abs(lo), abs(hi)))
    if lo > nu_lo + slack or hi < nu_hi - slack:
        raise BadBoxError(f"beta box {g.box[1]} does not cover interval {(nu_lo, nu_hi)}")
    best = -np.inf
    for beta in g.axis_points(1):
        d = uv.kappa + 2.0 * uv.nu * beta - beta * beta
        value, _ = min_max_quadratic(QuadFamily(uv.mu, d))
        best = max(best, value)
    return float(best)
