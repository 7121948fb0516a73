"""Hypothesis-driven invariants across the closed forms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covbounds import (
    BilinearQp,
    PairMoments,
    QuadFamily,
    lower_cov,
    lower_variance,
    min_max_quadratic,
    mixture_cov,
    objective,
    solve,
    upper_cov,
    upper_variance,
)

FINITE = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
POSITIVE = st.floats(min_value=1e-3, max_value=5.0, allow_nan=False, allow_infinity=False)


@st.composite
def pair_moments(draw, max_k=6):
    k = draw(st.integers(min_value=1, max_value=max_k))
    a = draw(st.lists(FINITE, min_size=k, max_size=k))
    b = draw(st.lists(FINITE, min_size=k, max_size=k))
    c = draw(st.lists(FINITE, min_size=k, max_size=k))
    return PairMoments(a, b, c)


@st.composite
def realizable_moments(draw, max_k=6):
    """Scenario moments that genuine random variables could produce."""
    k = draw(st.integers(min_value=1, max_value=max_k))
    a = np.array(draw(st.lists(FINITE, min_size=k, max_size=k)))
    b = np.array(draw(st.lists(FINITE, min_size=k, max_size=k)))
    vx = np.array(draw(st.lists(POSITIVE, min_size=k, max_size=k)))
    vy = np.array(draw(st.lists(POSITIVE, min_size=k, max_size=k)))
    rho = np.array(
        draw(st.lists(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=k, max_size=k))
    )
    return a, b, vx, vy, rho * np.sqrt(vx * vy)


@st.composite
def simplex_weights(draw, k):
    raw = np.array(draw(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=k, max_size=k)))
    total = raw.sum()
    if total <= 1e-9:
        w = np.zeros(k)
        w[0] = 1.0
        return w
    return raw / total


@settings(max_examples=200, deadline=None)
@given(pair_moments())
def test_upper_cov_symmetric_in_variables(p):
    assert abs(upper_cov(p).value - upper_cov(p.swapped()).value) <= 1e-12
    assert abs(lower_cov(p).value - lower_cov(p.swapped()).value) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(pair_moments(), FINITE, FINITE)
def test_upper_cov_translation_invariant(p, s, t):
    shifted = PairMoments(p.a + s, p.b + t, p.c)
    base = upper_cov(p).value
    assert upper_cov(shifted).value == pytest.approx(base, rel=1e-9, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(pair_moments(max_k=5), FINITE, FINITE)
def test_scaling_routes_by_sign(p, s, t):
    scaled = PairMoments(s * p.a, t * p.b, s * t * p.c)
    st_prod = s * t
    if st_prod >= 0:
        expected = st_prod * upper_cov(p).value
    else:
        expected = st_prod * lower_cov(p).value
    assert upper_cov(scaled).value == pytest.approx(expected, rel=1e-9, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.data(), pair_moments())
def test_mixture_always_inside_envelope(data, p):
    w = data.draw(simplex_weights(p.k))
    value = mixture_cov(p, w)
    assert lower_cov(p).value - 1e-9 <= value <= upper_cov(p).value + 1e-9


@settings(max_examples=200, deadline=None)
@given(pair_moments())
def test_witnesses_reproduce_bounds(p):
    up, lo = upper_cov(p), lower_cov(p)
    assert up.value >= float(p.c.max()) - 1e-12
    assert lo.value <= float(p.c.min()) + 1e-12
    assert lo.value <= up.value + 1e-12
    for res in (up, lo):
        achieved = mixture_cov(p, res.weights(p.k))
        assert achieved == pytest.approx(res.value, rel=1e-9, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_min_max_quadratic_dominates_every_alpha(data):
    k = data.draw(st.integers(1, 6))
    mu = np.array(data.draw(st.lists(FINITE, min_size=k, max_size=k)))
    d = np.array(data.draw(st.lists(FINITE, min_size=k, max_size=k)))
    value, argmin = min_max_quadratic(QuadFamily(mu, d))
    grid = np.linspace(mu.min() - 1.0, mu.max() + 1.0, 501)
    envelope = np.max(grid[None, :] ** 2 - 2 * mu[:, None] * grid[None, :] + d[:, None], axis=0)
    # value is the global minimum of the upper envelope.
    assert value <= envelope.min() + 1e-9
    at_argmin = np.max(argmin**2 - 2 * mu * argmin + d)
    assert value <= at_argmin + 1e-9


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_qp_dominates_random_simplex_points(data):
    k = data.draw(st.integers(1, 6))
    m = data.draw(st.lists(FINITE, min_size=k, max_size=k))
    n = data.draw(st.lists(FINITE, min_size=k, max_size=k))
    kappa = data.draw(st.lists(FINITE, min_size=k, max_size=k))
    qp = BilinearQp(m, n, kappa)
    sol = solve(qp)
    assert len(sol.support) <= 2
    for _ in range(5):
        w = data.draw(simplex_weights(k))
        assert sol.value >= objective(qp, w) - 1e-9


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_qp_equals_upper_cov_bridge(data):
    k = data.draw(st.integers(1, 6))
    m = np.array(data.draw(st.lists(FINITE, min_size=k, max_size=k)))
    n = np.array(data.draw(st.lists(FINITE, min_size=k, max_size=k)))
    kappa = np.array(data.draw(st.lists(FINITE, min_size=k, max_size=k)))
    bridge = upper_cov(PairMoments(m, n, kappa - m * n)).value
    assert solve(BilinearQp(m, n, kappa)).value == pytest.approx(bridge, rel=1e-9, abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(realizable_moments())
def test_variance_covariance_inequalities(instance):
    a, b, vx, vy, c = instance
    up_c = upper_cov(PairMoments(a, b, c)).value
    lo_c = lower_cov(PairMoments(a, b, c)).value
    up_x = upper_variance(a, vx + a**2).value
    up_y = upper_variance(b, vy + b**2).value
    lo_x = lower_variance(a, vx + a**2).value
    lo_y = lower_variance(b, vy + b**2).value

    # Cauchy-Schwarz style bound.
    assert abs(up_c) <= np.sqrt(up_x * up_y) + 1e-9

    # Sum/difference sandwich.
    mu_u, var_u = 0.5 * (a + b), 0.25 * (vx + vy + 2 * c)
    mu_v, var_v = 0.5 * (a - b), 0.25 * (vx + vy - 2 * c)
    up_u = upper_variance(mu_u, var_u + mu_u**2).value
    lo_u = lower_variance(mu_u, var_u + mu_u**2).value
    up_v = upper_variance(mu_v, var_v + mu_v**2).value
    lo_v = lower_variance(mu_v, var_v + mu_v**2).value
    assert lo_u - up_v <= lo_c + 1e-9
    assert lo_c <= up_c + 1e-9
    assert up_c <= up_u - lo_v + 1e-9

    # Additivity of variance bounds through the covariance bounds.
    mu_s, var_s = a + b, vx + vy + 2 * c
    up_s = upper_variance(mu_s, var_s + mu_s**2).value
    lo_s = lower_variance(mu_s, var_s + mu_s**2).value
    assert up_s <= up_x + up_y + 2 * up_c + 1e-9
    assert lo_s >= lo_x + lo_y + 2 * lo_c - 1e-9


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_validate_idempotent_on_random_sets(data):
    from covbounds import ScenarioMoments, ScenarioSet, validate

    n = data.draw(st.integers(1, 4))
    k = data.draw(st.integers(1, 4))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    scenarios = []
    for idx in range(k):
        root = rng.normal(size=(n, n))
        scenarios.append(ScenarioMoments(f"s{idx}", rng.normal(size=n), root @ root.T))
    once = validate(ScenarioSet(tuple(f"v{i}" for i in range(n)), tuple(scenarios)))
    twice = validate(once)
    for s1, s2 in zip(once.scenarios, twice.scenarios):
        np.testing.assert_array_equal(s1.cov, s2.cov)
