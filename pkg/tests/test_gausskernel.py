from math import gamma, pi, sqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pamlab import gausskernel as gk
from pamlab.errors import BudgetTooSmall, InvalidInput
from pamlab.gausskernel import Method


def _abs_moment_oracle(p):
    # u = x^(p+1) removes the singularity of |x|^p at the origin
    e = 2 / (p + 1)
    f = lambda u: mpmath.exp(-u**e / 2)
    return float(2 * mpmath.quad(f, [0, 1, mpmath.inf]) / (p + 1) / mpmath.sqrt(2 * mpmath.pi))


@pytest.mark.parametrize("h,closed", [(0.3, 2**0.2 * gamma(0.7) / sqrt(pi)),
                                      (0.25, 2**0.25 * gamma(0.75) / sqrt(pi)),
                                      (0.75, 2**-0.25 * gamma(0.25) / sqrt(pi)),
                                      (0.5, 1.0)])
def test_one_gap_closed_form(h, closed):
    est = gk.frak_I_exact_n1(h)
    assert est.value == pytest.approx(closed, rel=1e-14)
    assert est.value == pytest.approx(_abs_moment_oracle(1 - 2 * h), rel=1e-10)
    assert gk.frak_I_mc(h, []).value == est.value


def test_half_is_identically_one():
    for lam in ([0.5], [0.1, 0.9], [1.0, 0.3, 0.01]):
        est = gk.frak_I_mc(0.5, lam)
        assert est.value == 1.0 and est.std_error == 0.0


def test_seeded_runs_are_reproducible(monkeypatch):
    a = gk.frak_I_mc(0.3, [0.4, 0.7], samples=200_000, seed=11)
    b = gk.frak_I_mc(0.3, [0.4, 0.7], samples=200_000, seed=11)
    c = gk.frak_I_mc(0.3, [0.4, 0.7], samples=200_000, seed=12)
    assert a == b and a.value != c.value
    monkeypatch.setenv("PAMLAB_THREADS", "3")
    assert gk.thread_count() == 3
    assert gk.frak_I_mc(0.3, [0.4, 0.7], samples=200_000, seed=11).value == pytest.approx(a.value, rel=1e-14)


def test_two_gaps_against_quadrature_of_the_expectation():
    # J_2 = E |X1|^p |lam X2 - c X1|^p as a 2-d Gaussian integral
    h, lam = 0.3, 0.6
    p, c = 1 - 2 * h, sqrt(1 - lam * lam)
    inner = lambda x: float(mpmath.quad(lambda y: abs(lam * y - c * x) ** p * mpmath.npdf(y), [-mpmath.inf, c * x / lam, mpmath.inf]))
    oracle = float(mpmath.quad(lambda x: abs(x) ** p * mpmath.npdf(x) * inner(x), [-mpmath.inf, 0, mpmath.inf]))
    est = gk.frak_I_mc(h, [lam], samples=400_000, seed=3)
    assert abs(est.value - oracle) <= 4 * est.std_error


def test_flags_and_errors():
    assert "InfiniteVariance" in gk.frak_I_mc(0.8, [1e-4], samples=100_000).flags
    assert gk.frak_I_mc(0.8, [0.5], samples=100_000).flags == ()
    with pytest.raises(BudgetTooSmall):
        gk.frak_I_mc(0.3, [0.5], samples=1)
    with pytest.raises(InvalidInput):
        gk.frak_I_mc(0.3, [1.5])
    with pytest.raises(InvalidInput):
        gk.frak_I_mc(1.0, [0.5])


def test_kernel_one_gap():
    est = gk.h_kn_gaussian(0.3, [0.5])
    assert est.value == pytest.approx(gamma(0.7) * 0.5**-0.7, rel=1e-13)
    q = gk.h_kn_quadrature(0.3, [0.5])
    assert q.value == pytest.approx(gamma(0.7) * 0.5**-0.7, rel=1e-6)


def test_kernel_two_gaps_at_half():
    w = np.array([0.3, 0.45])
    assert gk.h_kn_quadrature(0.5, w).value == pytest.approx(pi / sqrt(w[0] * w[1]), rel=1e-8)
    assert gk.h_kn_gaussian(0.5, w).value == pytest.approx(pi / sqrt(w[0] * w[1]), rel=1e-12)


def test_kernel_cross_oracle_example():
    w = np.array([0.3, 0.4])  # s = (0.3, 0.6) on horizon 1
    g = gk.h_kn_gaussian(0.35, w)
    q = gk.h_kn_quadrature(0.35, w)
    assert abs(g.value - q.value) <= 3 * np.hypot(g.std_error, q.std_error)
    assert q.method is Method.Quadrature and g.method is Method.MonteCarlo


@pytest.mark.parametrize("c", [2.0, 10.0])
def test_kernel_scaling(c):
    h, w = 0.35, np.array([0.3, 0.4])
    base = gk.h_kn_quadrature(h, w)
    scaled = gk.h_kn_quadrature(h, c * w)
    expected = c ** (2 * (h - 1)) * base.value
    assert abs(scaled.value - expected) <= 3 * (scaled.std_error + c ** (2 * (h - 1)) * base.std_error) + 1e-12 * expected


def test_bounds_at_half():
    rep = gk.verify_frakI_bounds(0.5, 2, gk.geometric_lambda_grid(1e-3, 1e-1, 4), samples=1000)
    assert rep.passed and rep.values["slope"] == pytest.approx(0.0, abs=1e-12)


def test_bounds_preconditions():
    with pytest.raises(InvalidInput):
        gk.verify_frakI_bounds(0.3, 5, [[0.5] * 4])
    with pytest.raises(InvalidInput):
        gk.verify_frakI_bounds(0.9, 3, [[0.5, 0.5]])
    with pytest.raises(InvalidInput):
        gk.verify_frakI_bounds(0.3, 3, [[0.5]])


def test_lambda_grids():
    grid = gk.random_lambda_grid(3, 20, seed=5)
    assert len(grid) == 20 and all(g.shape == (2,) and np.all((g >= 1e-3) & (g <= 1)) for g in grid)
    assert all(np.array_equal(a, b) for a, b in zip(grid, gk.random_lambda_grid(3, 20, seed=5)))
    geo = gk.geometric_lambda_grid(1e-3, 1e-1, 5)
    np.testing.assert_allclose([g[0] for g in geo], [1e-1, 10**-1.5, 1e-2, 10**-2.5, 1e-3])


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 0.95))
def test_abs_moment_matches_integral(h):
    assert gk.abs_moment(1 - 2 * h) == pytest.approx(_abs_moment_oracle(1 - 2 * h), rel=1e-9)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.05, 0.7), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_kernel_prefactor_scaling(h, w1, w2):
    w = np.array([w1, w2])
    assert gk.kernel_prefactor(h, 3 * w) == pytest.approx(3 ** (2 * (h - 1)) * gk.kernel_prefactor(h, w), rel=1e-12)
