"""Scenario moment data model shared by every other module.

The entire input universe is a :class:`ScenarioSet`: K scenarios over n
variables, each scenario carrying a mean vector and a covariance matrix.
All downstream computations consume either per-pair moment triples
(:class:`PairMoments`) or per-variable mean/second-moment vectors extracted
from a validated set.

Scenario JSON schema (field names are part of the contract)::

    {"variables": ["X1", ...],
     "scenarios": [{"label": "bull", "mean": [..], "cov": [[..], [..]]}, ...]}
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from covbounds.exceptions import (
    DimensionMismatchError,
    DuplicateNameError,
    EmptyInputError,
    IndexOutOfRangeError,
    NonSymmetricError,
    NotPsdError,
    SchemaError,
)
from covbounds.validation import as_square_matrix, as_vector, readonly, same_length

# Symmetry check: |S_ij - S_ji| <= SYM_TOL * (1 + |S_ij|).
SYM_TOL = 1e-9
# PSD check: smallest eigenvalue >= -PSD_TOL * trace.
PSD_TOL = 1e-9


@dataclass(frozen=True)
class MeanInterval:
    """Closed interval [lo, hi] of scenario means for one variable."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise DimensionMismatchError(f"interval endpoints inverted: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def mean_interval(means) -> MeanInterval:
    """Interval spanned by per-scenario means: [min, max]."""
    arr = as_vector(means, "means")
    return MeanInterval(float(arr.min()), float(arr.max()))


@dataclass(frozen=True)
class PairMoments:
    """Per-scenario moment triples (a_i, b_i, c_i) for one variable pair.

    a_i and b_i are the scenario means of the two variables; c_i is the
    scenario covariance between them. For a variable paired with itself,
    b == a and c holds the scenario variances.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", readonly(as_vector(self.a, "a")))
        object.__setattr__(self, "b", readonly(as_vector(self.b, "b")))
        object.__setattr__(self, "c", readonly(as_vector(self.c, "c")))
        same_length(("a", self.a), ("b", self.b), ("c", self.c))

    @property
    def k(self) -> int:
        """Number of scenarios."""
        return self.a.size

    def swapped(self) -> "PairMoments":
        """Moments of (Y, X): roles of the two variables exchanged."""
        return PairMoments(self.b, self.a, self.c)

    def negated_second(self) -> "PairMoments":
        """Moments of (X, -Y); the lower bound of (X, Y) is minus the upper bound of this."""
        return PairMoments(self.a, -self.b, -self.c)

    def x_interval(self) -> MeanInterval:
        return mean_interval(self.a)

    def y_interval(self) -> MeanInterval:
        return mean_interval(self.b)

    def product_moments(self) -> np.ndarray:
        """Per-scenario second cross moments k_i = c_i + a_i * b_i."""
        return self.c + self.a * self.b


@dataclass(frozen=True)
class BoundResult:
    """An exact bound plus the mixture witness achieving it.

    ``i`` alone names a single attaining scenario. When ``j`` is set the
    witness is the two-scenario mixture putting weight ``lam`` on scenario
    ``i`` and ``1 - lam`` on scenario ``j``.
    """

    value: float
    i: int
    j: int | None = None
    lam: float | None = None

    def __post_init__(self):
        if (self.j is None) != (self.lam is None):
            raise DimensionMismatchError("pair witness needs both j and lam")
        if self.lam is not None and not (0.0 <= self.lam <= 1.0):
            raise DimensionMismatchError(f"witness weight outside [0, 1]: {self.lam}")

    @property
    def is_pair(self) -> bool:
        return self.j is not None

    def weights(self, k: int) -> np.ndarray:
        """Full simplex weight vector of the witness over k scenarios."""
        w = np.zeros(k)
        if self.is_pair:
            w[self.i] = self.lam
            w[self.j] += 1.0 - self.lam
        else:
            w[self.i] = 1.0
        return w

    def to_dict(self) -> dict:
        if self.is_pair:
            witness = {"kind": "pair", "i": self.i, "j": self.j, "lambda": self.lam}
        else:
            witness = {"kind": "single", "index": self.i}
        return {"value": self.value, "witness": witness}


@dataclass(frozen=True)
class ScenarioMoments:
    """One scenario: a label, a mean vector and a covariance matrix."""

    label: str
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = as_vector(self.mean, f"mean of scenario {self.label!r}")
        cov = as_square_matrix(self.cov, f"cov of scenario {self.label!r}", size=mean.size)
        object.__setattr__(self, "mean", readonly(mean))
        object.__setattr__(self, "cov", readonly(cov))

    @property
    def n_vars(self) -> int:
        return self.mean.size

    def second_moment(self, i: int) -> float:
        """E[X_i^2] = mean_i^2 + cov_ii."""
        return float(self.mean[i] ** 2 + self.cov[i, i])


@dataclass(frozen=True)
class ScenarioSet:
    """K scenarios over n named variables."""

    variable_names: tuple[str, ...]
    scenarios: tuple[ScenarioMoments, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "variable_names", tuple(str(v) for v in self.variable_names))
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        if not self.variable_names:
            raise EmptyInputError("at least one variable is required")
        if not self.scenarios:
            raise EmptyInputError("at least one scenario is required")
        n = len(self.variable_names)
        for s in self.scenarios:
            if s.n_vars != n:
                raise DimensionMismatchError(
                    f"scenario {s.label!r} has {s.n_vars} variables, set declares {n}"
                )

    @property
    def n_vars(self) -> int:
        return len(self.variable_names)

    @property
    def n_scenarios(self) -> int:
        return len(self.scenarios)

    def means(self) -> np.ndarray:
        """(K, n) array of scenario mean vectors."""
        return np.array([s.mean for s in self.scenarios])

    def covs(self) -> np.ndarray:
        """(K, n, n) array of scenario covariance matrices."""
        return np.array([s.cov for s in self.scenarios])


def validate(scenario_set: ScenarioSet, allow_non_psd: bool = False) -> ScenarioSet:
    """Validate a scenario set and return it in canonical form.

    Covariance matrices are symmetrized by averaging with their transpose
    before the PSD check, which absorbs benign round-off in user files.
    Asymmetry or indefiniteness beyond tolerance raises; with
    ``allow_non_psd`` the PSD failure degrades to a warning.

    Raises
    ------
    DuplicateNameError, NonSymmetricError, NotPsdError
        Plus any shape/finiteness errors from the constructors.
    """
    names = scenario_set.variable_names
    if len(set(names)) != len(names):
        raise DuplicateNameError(f"variable names are not unique: {names}")

    fixed = []
    for s in scenario_set.scenarios:
        cov = np.asarray(s.cov)
        gap = np.abs(cov - cov.T)
        limit = SYM_TOL * (1.0 + np.abs(cov))
        if np.any(gap > limit):
            worst = float(gap.max())
            raise NonSymmetricError(
                f"scenario {s.label!r} covariance asymmetric (worst gap {worst:.3e})"
            )
        sym = 0.5 * (cov + cov.T)
        smallest = float(np.linalg.eigvalsh(sym)[0])
        floor = -PSD_TOL * float(np.trace(sym))
        if smallest < floor:
            msg = f"scenario {s.label!r} covariance has eigenvalue {smallest:.6g} < {floor:.3e}"
            if allow_non_psd:
                warnings.warn(msg + " (accepted: allow_non_psd)", UserWarning, stacklevel=2)
            else:
                raise NotPsdError(msg)
        fixed.append(ScenarioMoments(s.label, s.mean, sym))
    return ScenarioSet(names, tuple(fixed))


def extract_pair(scenario_set: ScenarioSet, i: int, j: int) -> PairMoments:
    """Per-scenario (mean_i, mean_j, cov_ij) triples for variables i and j.

    i == j is allowed and yields b == a with c the scenario variances.
    """
    n = scenario_set.n_vars
    for idx in (i, j):
        if not isinstance(idx, (int, np.integer)) or not (0 <= idx < n):
            raise IndexOutOfRangeError(f"variable index {idx} outside [0, {n})")
    a = np.array([s.mean[i] for s in scenario_set.scenarios])
    b = np.array([s.mean[j] for s in scenario_set.scenarios])
    c = np.array([s.cov[i, j] for s in scenario_set.scenarios])
    return PairMoments(a, b, c)


def combo_moments(scenario_set: ScenarioSet, weights) -> tuple[np.ndarray, np.ndarray]:
    """Per-scenario mean and variance of the linear combination w.X.

    Returns (means, variances), each a K-vector. Used to reduce bounds on
    sums/differences of variables back to scalar moment inputs.
    """
    w = as_vector(weights, "weights")
    if w.size != scenario_set.n_vars:
        raise DimensionMismatchError(
            f"weights length {w.size} != number of variables {scenario_set.n_vars}"
        )
    means = scenario_set.means() @ w
    variances = np.einsum("i,kij,j->k", w, scenario_set.covs(), w)
    return means, variances


# ---------------------------------------------------------------------------
# JSON schema

def scenario_set_to_dict(scenario_set: ScenarioSet) -> dict:
    return {
        "variables": list(scenario_set.variable_names),
        "scenarios": [
            {"label": s.label, "mean": s.mean.tolist(), "cov": s.cov.tolist()}
            for s in scenario_set.scenarios
        ],
    }


def scenario_set_from_dict(doc: dict) -> ScenarioSet:
    """Build an (unvalidated) ScenarioSet from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a JSON object, got {type(doc).__name__}")
    for key in ("variables", "scenarios"):
        if key not in doc:
            raise SchemaError(f"missing required key {key!r}")
    variables = doc["variables"]
    raw = doc["scenarios"]
    if not isinstance(variables, list) or not isinstance(raw, list):
        raise SchemaError("'variables' and 'scenarios' must be JSON arrays")
    scenarios = []
    for pos, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise SchemaError(f"scenario #{pos} is not a JSON object")
        for key in ("label", "mean", "cov"):
            if key not in entry:
                raise SchemaError(f"scenario #{pos} missing key {key!r}")
        try:
            scenarios.append(ScenarioMoments(str(entry["label"]), entry["mean"], entry["cov"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"scenario #{pos} malformed: {exc}") from exc
    return ScenarioSet(tuple(str(v) for v in variables), tuple(scenarios))


def load_scenario_set(path) -> ScenarioSet:
    """Read a scenario JSON file (no validation beyond schema shape)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return scenario_set_from_dict(doc)


def dump_scenario_set(scenario_set: ScenarioSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_set_to_dict(scenario_set), fh, indent=2)
        fh.write("\n")
