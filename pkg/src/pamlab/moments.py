"""Second moments of the chaos components: exact, Monte Carlo and bounds.

Moments are computed up to the package's normalization: the temporal
covariance is ``|s - r|^{-gamma}`` with ``gamma = 2 - 2 h0`` and no constant,
and the spatial factors are the kernels of :mod:`pamlab.gausskernel`.
Acceptance-level statements are therefore about ratios, scaling exponents
and convergence, not absolute values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gamma as gamma_fn, isfinite, lgamma, log, exp, sqrt

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from . import quadrature as qd
from .errors import (BudgetTooSmall, InvalidInput, NonIntegrable, PreconditionViolated,
                     RegimeUnavailable, WrongRegime)
from .gausskernel import (BATCH, DEFAULT_SEED, Estimate, Method, abs_moment, frak_I_table,
                          kernel_constant, _combine)
from .params import HurstProfile
from .regions import classify_chaos
from .report import Report
from .simplex import Case, alpha_multipliers, alphabet_constant, case_split, rho_exponents
from . import singint

MAX_ORDER = 3


@dataclass(frozen=True)
class MomentQuery:
    """One moment computation: chaos order, time, profile and sampling budget."""
    n: int
    t: float
    profile: HurstProfile
    samples: int = 1_000_000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 0):
            raise InvalidInput("chaos order must be a non-negative integer")
        if not (self.t > 0 and isfinite(self.t)):
            raise InvalidInput("time must be positive")
        if self.samples <= 0:
            raise InvalidInput("sample budget must be positive")


def growth_exponent(profile: HurstProfile) -> float:
    """``|H| + 2 h0 - d``: the second moment of chaos ``n`` scales like ``t^{n * this}``."""
    return float(profile.h_total_exact + 2 * profile.h0_exact - profile.d)


def spatial_constant(profile: HurstProfile) -> float:
    """``prod_k Gamma(1 - h_k)``, the one-gap kernel constant."""
    return float(np.prod([gamma_fn(1 - h) for h in profile.h]))


def normalization_constant(profile: HurstProfile) -> float:
    """Per-chaos constant used by the bounds: HLS constant times the spatial constant."""
    return singint.hls_sharp_constant(profile.gamma) * spatial_constant(profile)


# ---------------------------------------------------------------------------
# first chaos

def _first_chaos_unit(e: float, gam: float, level: qd.Level) -> float:
    # on the unit square, by symmetry and y = x u the integral reduces to
    # 2 / (e + 2 - gam) * int_0^1 ((1 + u)/2)^e (1 - u)^{-gam} du
    u, w = qd.rule(0.0, 1.0, [(1.0, -gam)], level)
    inner = float(np.dot(w, ((1 + u) / 2) ** e * (1 - u) ** -gam))
    return 2 * inner / (e + 2 - gam)


def moment_n1_exact(t: float, profile: HurstProfile) -> Estimate:
    """``E[u_1(t, x)^2]`` from the exact spatial integral.

    Integrates ``prod_k Gamma(1 - h_k) (((t-s) + (t-r))/2)^{h_k - 1} |s-r|^{-gamma}``
    over ``[0, t]^2``, or its diagonal ``int_0^t`` when ``h0 = 1/2`` (white
    time).  The value is ``inf`` with flag ``Divergent`` when ``|H| + 2 h0 <= d``.
    """
    if not t > 0:
        raise InvalidInput("time must be positive")
    kappa = growth_exponent(profile)
    if profile.h_total_exact + 2 * profile.h0_exact <= profile.d:
        return Estimate(float("inf"), 0.0, Method.Quadrature, 0, ("Divergent",))
    e, gam = profile.h_total - profile.d, profile.gamma
    if profile.h0_exact == Fraction(1, 2):
        return Estimate(spatial_constant(profile) * t**kappa / (e + 1), 0.0, Method.Exact)
    value, err = qd.two_levels(lambda lv: _first_chaos_unit(e, gam, lv))
    scale = spatial_constant(profile) * t**kappa
    return Estimate(float(scale * value), float(scale * err), Method.Quadrature)


# ---------------------------------------------------------------------------
# upper bounds

def _case_two_bound(n: int, t: float, profile: HurstProfile) -> float:
    # Holder, symmetrization and HLS reduce chaos n to a Dirichlet integral
    h0, kappa = profile.h0, growth_exponent(profile)
    a = (profile.h_total - profile.d) / (2 * h0)
    if not a > -1:
        raise RegimeUnavailable("the simplex integral diverges: need |H| + 2 h0 > d")
    log_simplex = n * lgamma(a + 1) - lgamma(n * (a + 1) + 1)
    log_value = ((2 * h0 - 1) * lgamma(n + 1) + n * log(normalization_constant(profile))
                 + 2 * h0 * log_simplex + n * kappa * log(t))
    return exp(log_value)


I2_SUP_GRID = 8


@lru_cache(maxsize=None)
def _step_constant(profile: HurstProfile, n: int) -> float:
    """Largest sup of the two- or three-gap blocks over the alphabet vectors of order ``n``."""
    gam = profile.gamma
    best = 0.0
    for alpha in {tuple(a) for a in _alphabet(profile, n)}:
        rho = rho_exponents(profile, alpha)
        try:
            if n == 1:
                best = max(best, singint.quad_I1(1.0, 1.0, rho[0], gam).value)
            elif alpha[0] != 0:
                if singint.i1_degree(rho[0], gam) < 0:
                    raise RegimeUnavailable("two-gap block is unbounded on the unit square")
                xs = np.linspace(1 / 16, 1.0, 16)
                best = max(best, float(np.max(singint.i1_tabulated(1.0, xs, rho[0], gam))))
            else:
                rep = singint.sup_I2(rho[0], rho[1], gam, grid=I2_SUP_GRID)
                if not rep.passed:
                    raise RegimeUnavailable(f"three-gap block sup is not stable: {rep.lines()}")
                best = max(best, rep.values["sup"])
        except (NonIntegrable, PreconditionViolated) as exc:
            raise RegimeUnavailable(f"block integral unavailable for alpha={alpha}: {exc}") from exc
    return best


def _alphabet(profile: HurstProfile, n: int):
    a = alphabet_constant(profile)
    return [tuple(k * a for k in word) for word in alpha_multipliers(n)]


def moment_upper_bound(q: MomentQuery) -> Estimate:
    """Upper bound for ``E[u_n(t, x)^2]`` up to the package normalization.

    When the exponent alphabet constant is not positive the bound is the
    Dirichlet-integral expression obtained from the HLS inequality,
    ``(n!)^{2 h0 - 1} C^n t^{n kappa} [Gamma(a+1)^n / Gamma(n(a+1)+1)]^{2 h0}``
    with ``a = (|H| - d)/(2 h0)``; it behaves like ``(n!)^{-(|H|-d+1)} C^n``.
    Otherwise it is ``|D_n| n! (C S)^n t^{n kappa}`` with ``S`` the largest sup
    of the block integrals (at least 1) and ``|D_n|`` the number of alphabet
    vectors.  ``n = 0`` gives 1.

    Raises :class:`WrongRegime` when some chaos is infinite and
    :class:`RegimeUnavailable` when the block integrals are not available.
    """
    profile, n, t = q.profile, q.n, q.t
    if n == 0:
        return Estimate(1.0, 0.0, Method.Exact)
    if not classify_chaos(profile).finite:
        raise WrongRegime("some chaos has infinite second moment")
    if case_split(profile) is Case.CaseII:
        return Estimate(_case_two_bound(n, t, profile), 0.0, Method.Exact, 0, ("CaseII",))
    if n > MAX_ORDER:
        raise RegimeUnavailable(f"block constants are computed for n <= {MAX_ORDER}")
    s = max(1.0, _step_constant(profile, n))
    count = len(alpha_multipliers(n))
    c = normalization_constant(profile)
    value = count * factorial(n) * (c * s) ** n * t ** (n * growth_exponent(profile))
    return Estimate(float(value), 0.0, Method.Quadrature, 0, ("CaseI",))


# ---------------------------------------------------------------------------
# Monte Carlo surrogate

TABLE_POINTS = {2: 129, 3: 33}
TABLE_SAMPLES = {2: 400_000, 3: 100_000}
SMALLEST_LAMBDA = 1e-6


class _MixingTable:
    """``log J_n`` on a grid in ``log lambda``; linear interpolation, clamped at the ends."""

    def __init__(self, h: float, n: int, seed: int):
        self.n = n
        self.axis = np.linspace(log(SMALLEST_LAMBDA), 0.0, TABLE_POINTS[n])
        lam = np.exp(self.axis)
        lam[-1] = 1.0
        values = frak_I_table(h, [lam] * (n - 1), TABLE_SAMPLES[n], seed)
        self.log_values = np.log(values)
        if n == 3:
            self.interp = RegularGridInterpolator((self.axis, self.axis), self.log_values)

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        """``J_n`` at weights ``lam`` of shape ``(size, n - 1)``."""
        u = np.clip(np.log(lam), self.axis[0], 0.0)
        if self.n == 2:
            return np.exp(np.interp(u[:, 0], self.axis, self.log_values))
        return np.exp(self.interp(u))


@lru_cache(maxsize=32)
def _mixing_table(h: float, n: int, seed: int) -> _MixingTable:
    return _MixingTable(h, n, seed)


def _log_prefactor(h: float, w: np.ndarray) -> np.ndarray:
    """Log of the deterministic kernel factor, rowwise over gaps ``w`` of shape ``(size, n)``."""
    n = w.shape[1]
    out = n * log(kernel_constant(h)) + (h - 1) * np.log(w[:, -1])
    if n > 1:
        out += (2 * h - 1.5) * np.sum(np.log(w[:, :-1]), axis=1)
        out += (0.5 - h) * np.sum(np.log(w[:, 1:] + w[:, :-1]), axis=1)
    return out


def _log_half_kernel(profile: HurstProfile, times: np.ndarray, t: float, seed: int) -> np.ndarray:
    """``log prod_k h_{k,n}^{1/2}`` at ordered times, rowwise."""
    w = np.diff(np.concatenate([times, np.full((times.shape[0], 1), t)], axis=1), axis=1)
    n = w.shape[1]
    out = np.zeros(times.shape[0])
    lam = np.sqrt(w[:, :-1] / (w[:, :-1] + w[:, 1:])) if n > 1 else None
    for h in profile.h:
        log_h = _log_prefactor(h, w)
        if n == 1:
            log_h += log(abs_moment(1 - 2 * h))
        else:
            log_h += np.log(_mixing_table(h, n, seed)(lam))
        out += 0.5 * log_h
    return out


def _surrogate_batch(profile: HurstProfile, n: int, t: float, size: int, seq, table_seed: int):
    rng = np.random.default_rng(seq)
    gam = profile.gamma
    s = t * np.sort(rng.random((size, n)), axis=1)
    # r = s + delta with |delta| drawn from the density proportional to
    # |delta|^{-gamma} on (0, t): the coupling factor cancels against it
    mag = t * rng.random((size, n)) ** (1 / (1 - gam))
    r = s + np.where(rng.random((size, n)) < 0.5, -mag, mag)
    ok = np.all(r > 0, axis=1) & np.all(r < t, axis=1) & np.all(np.diff(r, axis=1) > 0, axis=1)
    out = np.zeros(size)
    if np.any(ok):
        logs = (_log_half_kernel(profile, s[ok], t, table_seed)
                + _log_half_kernel(profile, r[ok], t, table_seed))
        out[ok] = np.exp(logs)
    # n! * volume of the simplex = t^n; the proposal contributes (2 t^{1-gamma} / (1-gamma))^n
    return out * t**n * (2 * t ** (1 - gam) / (1 - gam)) ** n


def variance_finite(profile: HurstProfile, n: int) -> bool:
    """Whether the surrogate estimator has finite variance.

    Squaring the sampled kernel doubles the exponent of each gap; the
    estimator is square integrable when every gap exponent of ``h_n`` stays
    above -1 and no spatial factor is in the marginal-variance regime.
    """
    inner = sum(2 * h - 1.5 for h in profile.h)
    last = sum(h - 1 for h in profile.h)
    if n > 1 and inner <= -1:
        return False
    if last <= -1:
        return False
    return not any(h >= 0.75 for h in profile.h) or n == 1


MAX_RELATIVE_ERROR = 0.10


def moment_mc(q: MomentQuery) -> Estimate:
    """Monte Carlo estimate of the Holder surrogate of ``E[u_n(t, x)^2]``.

    The surrogate replaces the coupled spatial kernel by
    ``prod_k h_{k,n}(s)^{1/2} h_{k,n}(r)^{1/2}`` and integrates it against
    ``prod_i |s_i - r_i|^{-gamma}`` over two ordered simplices, times ``n!``.
    It bounds the moment from above and is flagged ``surrogate_upper``.
    The times ``s`` are uniform on the simplex and ``r_i = s_i + delta_i``
    with ``|delta_i|`` drawn with density proportional to
    ``|delta|^{-gamma}``, which removes the coupling singularity from the
    estimator.  The mixing expectations come from a shared-draw table
    (``log J`` interpolated linearly in ``log lambda``).

    Raises :class:`WrongRegime` when some chaos is infinite and
    :class:`BudgetTooSmall` when the relative error exceeds 10%.
    """
    profile, n, t = q.profile, q.n, q.t
    if not 1 <= n <= MAX_ORDER:
        raise InvalidInput(f"Monte Carlo handles 1 <= n <= {MAX_ORDER}")
    if not classify_chaos(profile).finite:
        raise WrongRegime("some chaos has infinite second moment")
    if q.samples < 2:
        raise BudgetTooSmall("at least two samples are needed")
    flags = ["surrogate_upper"]
    if not variance_finite(profile, n):
        flags.append("InfiniteVariance")
    table_seed = int(np.random.SeedSequence(q.seed).generate_state(1)[0])
    sizes = [BATCH] * (q.samples // BATCH) + ([q.samples % BATCH] if q.samples % BATCH else [])
    seqs = np.random.SeedSequence([q.seed, n]).spawn(len(sizes))
    parts = []
    for size, seq in zip(sizes, seqs):
        y = _surrogate_batch(profile, n, t, size, seq, table_seed)
        m = float(np.mean(y))
        parts.append((size, m, float(np.sum((y - m) ** 2))))
    count, mean, m2 = _combine(parts)
    se = sqrt(m2 / (count - 1) / count)
    est = Estimate(mean, se, Method.MonteCarlo, q.samples, tuple(flags))
    if not isfinite(mean) or mean <= 0 or est.relative_error > MAX_RELATIVE_ERROR:
        raise BudgetTooSmall(f"relative standard error {est.relative_error:.3g} too large")
    return est


def fit_time_exponent(ts, estimates) -> float:
    """Least-squares slope of ``log value`` against ``log t``."""
    x = np.log(np.asarray(ts, dtype=float))
    y = np.log([e.value for e in estimates])
    return float(np.polyfit(x, y, 1)[0])


# ---------------------------------------------------------------------------
# divergence probes

PROBE_TOLERANCE = 0.03
FLAT = 1e-6   # fitted exponents at most this are read as non-decaying increments
DEFAULT_CUTOFFS = tuple(10.0**-k for k in range(1, 7))


def probe_exponents(profile: HurstProfile) -> dict:
    """Integrand exponents of the truncated lower-bound integrals.

    ``temporal``: ``2 H* - 3/2 d* + 4 h0 - 2`` plus ``|H| - d + 1`` when that
    is negative.  ``spatial``: ``2 H* - 3/2 d* + 1``, the inner kernel
    exponent.  Each integral ``int_eps^{t/2} x^e dx`` diverges exactly when
    ``e <= -1``.
    """
    hs, ds = profile.h_star_exact, profile.d_star
    base = 2 * hs - Fraction(3, 2) * ds
    temporal = base + 4 * profile.h0_exact - 2
    extra = profile.h_total_exact - profile.d + 1
    if extra < 0:
        temporal += extra
    return {"temporal": temporal, "spatial": base + 1}


@dataclass
class ProbeResult:
    fitted: float
    analytic: float
    diverges: bool


def _truncation_fit(e: float, cutoffs, t: float) -> float:
    """Growth exponent of ``int_eps^{t/2} x^e dx`` in ``eps``, fitted from increments."""
    eps = np.asarray(cutoffs, dtype=float)
    inc = [qd.integrate(lambda x: x**e, b, a, [(0.0, e)]) for a, b in zip(eps[:-1], eps[1:])]
    # an increment over (b, a) with a = q b grows like b^{e+1}
    mids = np.sqrt(eps[:-1] * eps[1:])
    return float(np.polyfit(np.log(mids), np.log(inc), 1)[0])


def divergence_probe(profile: HurstProfile, eps_grid=DEFAULT_CUTOFFS, t: float = 1.0) -> Report:
    """Fit the truncation exponents of the lower-bound integrals for the second chaos.

    PASS when each fitted exponent matches ``e + 1`` within 0.03.  The
    verdict ``diverges`` is set when some fitted exponent is not positive,
    i.e. the increments of the truncated integral do not decay.
    """
    eps = np.asarray(eps_grid, dtype=float)
    if eps.ndim != 1 or eps.size < 3 or np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise InvalidInput("cutoffs must be at least three decreasing positive values")
    if eps[0] >= t / 2:
        raise InvalidInput("cutoffs must lie below t/2")
    rep = Report(f"divergence probe, h0={profile.h0!r}, h={list(profile.h)!r}")
    results = {}
    for name, e in probe_exponents(profile).items():
        fitted = _truncation_fit(float(e), eps, t)
        analytic = float(e + 1)
        results[name] = ProbeResult(fitted, analytic, fitted <= FLAT)
        rep.add(f"{name} exponent", abs(fitted - analytic) <= PROBE_TOLERANCE,
                f"fitted {fitted:.4f}, analytic {analytic:.4f}")
    diverges = any(r.diverges for r in results.values())
    rep.values.update(probes=results, diverges=diverges,
                      fitted=results["temporal"].fitted, analytic=results["temporal"].analytic)
    return rep


# ---------------------------------------------------------------------------
# chaos series

@dataclass
class SeriesSums:
    """Terms and partial sums of the bound on ``sum_n ||u_n||_p``."""
    terms: list
    partial_sums: list
    log_envelope: float
    t0: float = field(default=float("inf"))


def series_partial_sums(profile: HurstProfile, t: float, p: float, N: int) -> SeriesSums:
    """Partial sums of ``sum_n p^{n/2} C^n (n!)^{-(|H|-d+1)/2} t^{n kappa / 2}``.

    ``log_envelope`` is ``c2 p^{(a+1)/a} t^{kappa/a}`` with ``a = |H| - d + 1``
    and ``c2 = (a/2) C^{2/a}``, the leading behaviour of the logarithm of
    the ``p``-th power of the series.  When ``a = 0`` the terms are geometric
    and ``t0`` is the time at which their ratio reaches 1.

    Raises :class:`WrongRegime` outside ``h0 + H* > 3/4 d*`` and ``|H| >= d - 1``.
    """
    if not p >= 1:
        raise InvalidInput("p must be at least 1")
    if not t > 0 or N < 0:
        raise InvalidInput("need t > 0 and N >= 0")
    a_exact = profile.h_total_exact - profile.d + 1
    if not (profile.h0_exact + profile.h_star_exact > Fraction(3, 4) * profile.d_star and a_exact >= 0):
        raise WrongRegime("the series bound needs h0 + H* > 3/4 d* and |H| >= d - 1")
    a, kappa = float(a_exact), growth_exponent(profile)
    c = normalization_constant(profile)
    log_x = 0.5 * log(p) + log(c) + 0.5 * kappa * log(t)
    terms = [exp(k * log_x - 0.5 * a * lgamma(k + 1)) for k in range(N + 1)]
    sums = list(np.cumsum(terms))
    if a > 0:
        env = (a / 2) * c ** (2 / a) * p ** ((a + 1) / a) * t ** (kappa / a)
        t0 = float("inf")
    else:
        env = float("inf")
        t0 = (sqrt(p) * c) ** (-2 / kappa)
    return SeriesSums(terms, [float(v) for v in sums], env, t0)
