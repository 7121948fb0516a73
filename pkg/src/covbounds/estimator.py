"""Scikit-learn style front end.

``ScenarioCovarianceBounds`` follows the sklearn covariance-estimator
convention: ``fit(X, y)`` with regime labels in ``y`` estimates per-regime
moments and exposes the exact bound matrices as fitted attributes, so the
algorithm slots into pipelines, ``clone`` and ``get_params`` like any other
estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from covbounds.estimation import RegimeSamples, estimate_moments
from covbounds.matrices import cov_bounds_matrix, is_psd, uncertainty_set_check
from covbounds.moments import validate


class ScenarioCovarianceBounds(BaseEstimator):
    """Exact covariance bounds fitted from regime-labeled observations.

    Parameters
    ----------
    allow_non_psd : bool, default=False
        Accept regimes whose estimated covariance matrix fails the PSD
        tolerance, downgrading the error to a warning.

    Attributes
    ----------
    scenarios_ : ScenarioSet
        Validated per-regime moments.
    upper_, lower_ : ndarray of shape (n_features, n_features)
        Entrywise covariance bound matrices.
    witnesses_ : nested tuples of CovBounds
        The extremal mixture for every variable pair.
    regimes_ : tuple of str
        Regime labels in first-appearance order.

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[0.0, 0.0], [2.0, 2.0], [1.0, -1.0], [3.0, 1.0]])
    >>> y = ["bull", "bull", "bear", "bear"]
    >>> est = ScenarioCovarianceBounds().fit(X, y)
    >>> est.upper_.shape
    (2, 2)
    """

    def __init__(self, allow_non_psd: bool = False):
        self.allow_non_psd = allow_non_psd

    def fit(self, X, y, feature_names=None):
        """Estimate per-regime moments and compute the bound matrices.

        Parameters
        ----------
        X : array-like of shape (n_samples, n_features)
            Observations.
        y : array-like of shape (n_samples,)
            Regime label of each observation; every regime needs >= 2 rows.
        feature_names : sequence of str, optional
            Variable names; defaults to x0..x{n-1}.
        """
        X = check_array(X, dtype=float, ensure_min_samples=2)
        y = np.asarray(y)
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise ValueError(
                f"y must hold one regime label per row, got shape {y.shape} for {X.shape[0]} rows"
            )
        if feature_names is None:
            feature_names = [f"x{i}" for i in range(X.shape[1])]
        samples = RegimeSamples.from_labeled_rows(feature_names, y.tolist(), X)
        scenario_set = validate(estimate_moments(samples), allow_non_psd=self.allow_non_psd)
        bounds = cov_bounds_matrix(scenario_set)

        self.n_features_in_ = X.shape[1]
        self.feature_names_ = tuple(scenario_set.variable_names)
        self.regimes_ = tuple(s.label for s in scenario_set.scenarios)
        self.scenarios_ = scenario_set
        self.upper_ = bounds.upper
        self.lower_ = bounds.lower
        self.witnesses_ = bounds.witnesses
        return self

    def bound_psd_flags(self) -> tuple[bool, bool]:
        """(is_psd(upper), is_psd(lower)); neither is guaranteed."""
        check_is_fitted(self)
        return is_psd(self.upper_), is_psd(self.lower_)

    def check_envelope(self, samples: int = 1000, seed: int = 0):
        """Sample mixture covariance matrices and verify the entrywise envelope."""
        check_is_fitted(self)
        return uncertainty_set_check(self.scenarios_, samples, seed=seed)
