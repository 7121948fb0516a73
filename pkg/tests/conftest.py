import json
import warnings

import numpy as np
import pytest

from covbounds import PairMoments, ScenarioMoments, ScenarioSet, validate

# Two-scenario trivariate desk instance used throughout: bound matrices are
# known, the upper matrix is indefinite.
TRIVARIATE_MEANS = (
    (-1.0, 1.0, 0.0),
    (-2.0, 1.0, -1.0),
)
TRIVARIATE_COVS = (
    (
        (2.00, -1.20, -1.98),
        (-1.20, 2.00, 2.55),
        (-1.98, 2.55, 4.00),
    ),
    (
        (2.00, 0.40, 2.83),
        (0.40, 2.00, -1.98),
        (2.83, -1.98, 4.00),
    ),
)
TRIVARIATE_UPPER = np.array(
    [
        [2.25, 0.40, 2.83],
        [0.40, 2.00, 2.55],
        [2.83, 2.55, 4.25],
    ]
)
# Lower diagonal from the closed form; off-diagonals frozen from the simplex
# grid oracle (the direct minimization of the pair mixture covariance).
TRIVARIATE_LOWER = np.array(
    [
        [2.00, -1.20, -1.98],
        [-1.20, 2.00, -1.98],
        [-1.98, -1.98, 4.00],
    ]
)


def make_trivariate_set() -> ScenarioSet:
    return ScenarioSet(
        ("X1", "X2", "X3"),
        (
            ScenarioMoments("P1", TRIVARIATE_MEANS[0], TRIVARIATE_COVS[0]),
            ScenarioMoments("P2", TRIVARIATE_MEANS[1], TRIVARIATE_COVS[1]),
        ),
    )


def validated_trivariate_set() -> ScenarioSet:
    # The second scenario matrix is indefinite (smallest eigenvalue
    # about -0.844), so it only passes validation with the override.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return validate(make_trivariate_set(), allow_non_psd=True)


@pytest.fixture
def trivariate_set():
    return validated_trivariate_set()


@pytest.fixture
def trivariate_json(tmp_path):
    path = tmp_path / "trivariate.json"
    doc = {
        "variables": ["X1", "X2", "X3"],
        "scenarios": [
            {"label": "P1", "mean": list(TRIVARIATE_MEANS[0]), "cov": [list(r) for r in TRIVARIATE_COVS[0]]},
            {"label": "P2", "mean": list(TRIVARIATE_MEANS[1]), "cov": [list(r) for r in TRIVARIATE_COVS[1]]},
        ],
    }
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture
def correlated_pair():
    # Bull/bear-style pair with identical unit variances and full correlation.
    return PairMoments([-1.0, 0.0], [0.0, 1.0], [1.0, 1.0])


@pytest.fixture
def anticorrelated_pair():
    return PairMoments([-1.0, 0.0], [0.0, -1.0], [1.0, 1.0])


def random_scenario_set(rng: np.random.Generator, n_vars: int, n_scen: int) -> ScenarioSet:
    """Random valid set: means in [-2, 2], covariances A@A.T (PSD by build)."""
    scenarios = []
    for k in range(n_scen):
        mean = rng.uniform(-2.0, 2.0, size=n_vars)
        a = rng.normal(size=(n_vars, n_vars))
        cov = a @ a.T
        scenarios.append(ScenarioMoments(f"s{k}", mean, cov))
    names = tuple(f"v{i}" for i in range(n_vars))
    return validate(ScenarioSet(names, tuple(scenarios)))


def random_realizable_instance(rng: np.random.Generator, k: int):
    """Per-scenario (a, b, var_x, var_y, c) with |c| <= sqrt(var_x*var_y).

    Realizable as moments of actual random variables, which the inequality
    suite presupposes.
    """
    a = rng.uniform(-5.0, 5.0, size=k)
    b = rng.uniform(-5.0, 5.0, size=k)
    var_x = rng.uniform(0.05, 5.0, size=k)
    var_y = rng.uniform(0.05, 5.0, size=k)
    rho = rng.uniform(-1.0, 1.0, size=k)
    c = rho * np.sqrt(var_x * var_y)
    return a, b, var_x, var_y, c


def edge_mixture_extremes(p: PairMoments, step: float = 1e-3):
    """Extreme mixture covariance over all pair edges plus the vertices.

    Independent check of the closed forms: evaluates the mixture covariance
    formula directly on one-dimensional lambda grids.
    """
    lam = np.arange(0.0, 1.0 + 0.5 * step, step)
    lo = float(np.min(p.c))
    hi = float(np.max(p.c))
    for i in range(p.k):
        for j in range(i + 1, p.k):
            vals = (
                lam * p.c[i]
                + (1.0 - lam) * p.c[j]
                + lam * (1.0 - lam) * (p.a[i] - p.a[j]) * (p.b[i] - p.b[j])
            )
            lo = min(lo, float(vals.min()))
            hi = max(hi, float(vals.max()))
    return lo, hi
