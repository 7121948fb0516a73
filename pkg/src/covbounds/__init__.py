"""Exact covariance bounds under finitely many probability scenarios.

Given K scenarios for a random vector (a mean vector and covariance matrix
each), this package computes the exact upper and lower covariance/variance
over all scenario mixtures via pairwise closed forms, assembles the
entrywise bound matrices, and solves the associated simplex-constrained
bilinear quadratic program exactly. Brute-force grid oracles cross-check
every closed form.
"""

from covbounds.covariance import (
    BoundsReport,
    CovBounds,
    bounds_report,
    correlation_bounds,
    cov_bounds,
    lower_cov,
    mean_certain_upper_cov,
    mixture_cov,
    pair_upper_cov,
    upper_cov,
)
from covbounds.estimation import RegimeSamples, estimate_moments, read_regime_csv
from covbounds.estimator import ScenarioCovarianceBounds
from covbounds.matrices import (
    CovarianceBoundMatrices,
    UncertaintySetReport,
    cov_bounds_matrix,
    is_psd,
    mixture_covariance_matrix,
    simplex_sample,
    uncertainty_set_check,
)
from covbounds.moments import (
    BoundResult,
    MeanInterval,
    PairMoments,
    ScenarioMoments,
    ScenarioSet,
    combo_moments,
    dump_scenario_set,
    extract_pair,
    load_scenario_set,
    mean_interval,
    scenario_set_from_dict,
    scenario_set_to_dict,
    validate,
)
from covbounds.oracles import (
    GridSpec,
    UvMoments,
    grid_maximin_cov,
    grid_simplex_envelope,
    grid_uv_maximin,
    lower_expectation_bilinear,
    simplex_lattice,
    upper_expectation_bilinear,
)
from covbounds.qp import BilinearQp, QpSolution, objective, q_matrix, solve
from covbounds.variance import (
    QuadFamily,
    lower_variance,
    lower_variance_from_variances,
    min_max_quadratic,
    mixture_variance,
    upper_variance,
    upper_variance_from_variances,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearQp",
    "BoundResult",
    "BoundsReport",
    "CovBounds",
    "CovarianceBoundMatrices",
    "GridSpec",
    "MeanInterval",
    "PairMoments",
    "QpSolution",
    "QuadFamily",
    "RegimeSamples",
    "ScenarioCovarianceBounds",
    "ScenarioMoments",
    "ScenarioSet",
    "UncertaintySetReport",
    "UvMoments",
    "bounds_report",
    "combo_moments",
    "correlation_bounds",
    "cov_bounds",
    "cov_bounds_matrix",
    "dump_scenario_set",
    "estimate_moments",
    "extract_pair",
    "grid_maximin_cov",
    "grid_simplex_envelope",
    "grid_uv_maximin",
    "is_psd",
    "load_scenario_set",
    "lower_cov",
    "lower_expectation_bilinear",
    "lower_variance",
    "lower_variance_from_variances",
    "mean_certain_upper_cov",
    "mean_interval",
    "min_max_quadratic",
    "mixture_cov",
    "mixture_covariance_matrix",
    "mixture_variance",
    "objective",
    "pair_upper_cov",
    "q_matrix",
    "read_regime_csv",
    "scenario_set_from_dict",
    "scenario_set_to_dict",
    "simplex_lattice",
    "simplex_sample",
    "solve",
    "uncertainty_set_check",
    "upper_cov",
    "upper_expectation_bilinear",
    "upper_variance",
    "upper_variance_from_variances",
    "validate",
]
