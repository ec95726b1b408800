from math import factorial, gamma as gamma_fn, log, pi, sqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import beta as beta_fn

from pamlab import moments
from pamlab.errors import BudgetTooSmall, InvalidInput, WrongRegime
from pamlab.gausskernel import Method
from pamlab.params import make_profile
from pamlab.simplex import Case, case_split


def first_chaos_oracle(h0, h, t):
    """``Gamma(1-h) t^kappa * 2/(e+2-gamma) * int_0^1 ((1+u)/2)^e (1-u)^{-gamma} du`` by mpmath."""
    e, gam = h - 1, 2 - 2 * h0
    # u = 1 - v^k with k = 1/(1-gamma) removes the endpoint singularity
    k = 1 / (1 - gam)
    inner = mpmath.quad(lambda v: k * ((2 - v**k) / 2) ** e, [0, 1])
    return float(gamma_fn(1 - h) * t ** (h + 2 * h0 - 1) * 2 * inner / (e + 2 - gam))


# --- first chaos

def test_first_chaos_white_time_closed_form():
    # gamma -> 0: Gamma(1/2) int int ((a + b)/2)^{-1/2} over the unit square
    est = moments.moment_n1_exact(1.0, make_profile(1 - 5e-7, [0.5]))
    closed = sqrt(2 * pi) * (4 / 3) * (2 * sqrt(2) - 2)
    assert est.value == pytest.approx(closed, rel=1e-5)


@pytest.mark.parametrize("h0,h,t", [(0.7, 0.3, 1.0), (0.6, 0.45, 2.5), (0.9, 0.1, 0.3)])
def test_first_chaos_against_mpmath(h0, h, t):
    est = moments.moment_n1_exact(t, make_profile(h0, [h]))
    assert est.value == pytest.approx(first_chaos_oracle(h0, h, t), rel=1e-7)
    assert est.method is Method.Quadrature


def test_first_chaos_divergent_and_boundary():
    est = moments.moment_n1_exact(1.0, make_profile(0.6, [0.2, 0.2]))
    assert est.value == float("inf") and "Divergent" in est.flags
    # white time: Gamma(1-h) int_0^t (t-s)^{h-1} ds
    white = moments.moment_n1_exact(2.0, make_profile(0.5, [0.001]))
    assert white.value == pytest.approx(gamma_fn(0.999) * 2.0**0.001 / 0.001, rel=1e-12)
    with pytest.raises(InvalidInput):
        moments.moment_n1_exact(0.0, make_profile(0.7, [0.3]))


@settings(max_examples=15, deadline=None)
@given(st.floats(0.55, 0.95), st.floats(0.05, 0.5), st.floats(0.1, 5.0))
def test_first_chaos_time_scaling(h0, h, t):
    profile = make_profile(h0, [h])
    ratio = moments.moment_n1_exact(t, profile).value / moments.moment_n1_exact(1.0, profile).value
    assert ratio == pytest.approx(t ** moments.growth_exponent(profile), rel=1e-9)


# --- upper bounds

def test_bound_order_zero():
    q = moments.MomentQuery(0, 3.0, make_profile(0.7, [0.3]))
    assert moments.moment_upper_bound(q).value == 1.0


def test_case_two_bound_formula():
    profile = make_profile(0.7, [0.5])
    assert case_split(profile) is Case.CaseII
    h0, kappa, a = 0.7, moments.growth_exponent(profile), (0.5 - 1) / 1.4
    c = moments.normalization_constant(profile)
    for n in (1, 2, 5):
        expected = (factorial(n) ** (2 * h0 - 1) * c**n * 1.5 ** (n * kappa)
                    * (gamma_fn(a + 1) ** n / gamma_fn(n * (a + 1) + 1)) ** (2 * h0))
        est = moments.moment_upper_bound(moments.MomentQuery(n, 1.5, profile))
        assert est.value == pytest.approx(expected, rel=1e-12) and "CaseII" in est.flags


@pytest.mark.parametrize("h0,h", [(0.7, 0.5), (0.7, 0.3), (0.9, 0.45)])
def test_bound_dominates_first_chaos(h0, h):
    profile = make_profile(h0, [h])
    bound = moments.moment_upper_bound(moments.MomentQuery(1, 1.0, profile)).value
    assert bound >= moments.moment_n1_exact(1.0, profile).value


def test_bound_refuses_infinite_chaos():
    with pytest.raises(WrongRegime):
        moments.moment_upper_bound(moments.MomentQuery(2, 1.0, make_profile(0.6, [0.2, 0.2])))


# --- Monte Carlo surrogate

def test_surrogate_first_chaos_closed_form():
    # at n = 1 the surrogate is Gamma(1-h) int int (ab)^{(h-1)/2} |a-b|^{-gamma}
    h0, h = 0.7, 0.3
    gam = 2 - 2 * h0
    closed = gamma_fn(1 - h) * 2 * beta_fn((h + 1) / 2, 1 - gam) / (1 + h - gam)
    est = moments.moment_mc(moments.MomentQuery(1, 1.0, make_profile(h0, [h]), 400_000))
    assert abs(est.value - closed) <= 4 * est.std_error
    assert est.value >= moments.moment_n1_exact(1.0, make_profile(h0, [h])).value


def test_surrogate_second_chaos_against_frozen_quadrature():
    # frozen from an independent 4-d quadrature of the surrogate integrand
    est = moments.moment_mc(moments.MomentQuery(2, 1.0, make_profile(0.7, [0.5]), 1_000_000))
    assert abs(est.value - 144.2376) <= 3 * est.std_error
    assert "surrogate_upper" in est.flags


def test_surrogate_is_seeded():
    q = moments.MomentQuery(2, 1.0, make_profile(0.7, [0.3]), 50_000, seed=7)
    a, b = moments.moment_mc(q), moments.moment_mc(q)
    assert a == b
    other = moments.moment_mc(moments.MomentQuery(2, 1.0, make_profile(0.7, [0.3]), 50_000, seed=8))
    assert other.value != a.value


def test_surrogate_errors():
    with pytest.raises(BudgetTooSmall):
        moments.moment_mc(moments.MomentQuery(2, 1.0, make_profile(0.7, [0.3]), 1))
    with pytest.raises(WrongRegime):
        moments.moment_mc(moments.MomentQuery(2, 1.0, make_profile(0.6, [0.2, 0.2])))
    with pytest.raises(InvalidInput):
        moments.moment_mc(moments.MomentQuery(4, 1.0, make_profile(0.7, [0.3])))


def test_variance_flag():
    assert moments.variance_finite(make_profile(0.7, [0.3]), 2)
    assert not moments.variance_finite(make_profile(0.9, [0.8]), 2)


def test_query_validation():
    profile = make_profile(0.7, [0.3])
    for bad in (dict(n=-1, t=1.0), dict(n=1.5, t=1.0), dict(n=1, t=0.0), dict(n=1, t=float("inf"))):
        with pytest.raises(InvalidInput):
            moments.MomentQuery(profile=profile, **bad)
    with pytest.raises(InvalidInput):
        moments.MomentQuery(1, 1.0, profile, samples=0)


def test_fit_time_exponent_recovers_power():
    ests = [moments.Estimate(3 * t**1.7, 0.0, Method.Exact) for t in (0.5, 1, 2, 4)]
    assert moments.fit_time_exponent((0.5, 1, 2, 4), ests) == pytest.approx(1.7)


# --- divergence probe

def test_probe_exponents_are_exact():
    exps = moments.probe_exponents(make_profile(0.5, [0.2]))
    assert float(exps["temporal"]) == pytest.approx(-1.1, abs=1e-15)


@pytest.mark.parametrize("h0,h,diverges", [(0.5, 0.2, True), (0.8, 0.4, False), (0.55, 0.45, False)])
def test_probe_matches_analytic(h0, h, diverges):
    rep = moments.divergence_probe(make_profile(h0, [h]))
    assert rep.passed and rep.values["diverges"] is diverges
    assert rep.values["fitted"] == pytest.approx(rep.values["analytic"], abs=0.03)


def test_probe_rejects_bad_cutoffs():
    profile = make_profile(0.7, [0.3])
    for eps in ([0.1, 0.01], [0.01, 0.1, 0.001], [0.9, 0.1, 0.01]):
        with pytest.raises(InvalidInput):
            moments.divergence_probe(profile, eps)


# --- chaos series

def test_series_terms():
    profile = make_profile(0.8, [0.4])
    sums = moments.series_partial_sums(profile, 2.0, 3.0, 6)
    a = 0.4 - 1 + 1
    c = moments.normalization_constant(profile)
    kappa = moments.growth_exponent(profile)
    for k, term in enumerate(sums.terms):
        expected = 3.0 ** (k / 2) * c**k * factorial(k) ** (-a / 2) * 2.0 ** (k * kappa / 2)
        assert term == pytest.approx(expected, rel=1e-12)
    assert np.all(np.diff(sums.partial_sums) > 0)
    assert sums.log_envelope == pytest.approx((a / 2) * c ** (2 / a) * 3.0 ** ((a + 1) / a) * 2.0 ** (kappa / a))


def test_series_geometric_case():
    # |H| = d - 1 makes the terms geometric with ratio sqrt(p) C t^{kappa/2}
    profile = make_profile(0.8, [0.5, 0.5])
    sums = moments.series_partial_sums(profile, 1.0, 2.0, 4)
    ratio = sqrt(2.0) * moments.normalization_constant(profile)
    assert sums.terms[3] / sums.terms[2] == pytest.approx(ratio)
    at_t0 = moments.series_partial_sums(profile, sums.t0, 2.0, 3)
    assert at_t0.terms[2] / at_t0.terms[1] == pytest.approx(1.0)


def test_series_regime():
    with pytest.raises(WrongRegime):
        moments.series_partial_sums(make_profile(0.6, [0.2, 0.2]), 1.0, 2.0, 3)
    with pytest.raises(InvalidInput):
        moments.series_partial_sums(make_profile(0.8, [0.4]), 1.0, 0.5, 3)
