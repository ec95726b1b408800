"""Spatial kernels of the chaos integrands.

For one spatial coordinate with Hurst parameter ``h`` and time gaps
``w_1, ..., w_n`` the kernel is

    h_n(w) = int_{R^n} prod_i exp(-w_i eta_i^2) prod_i |eta_i - eta_{i-1}|^{1-2h} d eta,

with ``eta_0 = 0``.  Rescaling each ``eta_i`` by its Gaussian width gives

    h_n(w) = c^n w_n^{h-1} prod_{i<n} w_i^{2h-3/2} prod_{i>=2} (w_i + w_{i-1})^{1/2-h} J_n(lambda),

where ``J_n(lambda) = E[|X_1|^p prod_{i>=2} |lambda_i X_i - sqrt(1-lambda_i^2) X_{i-1}|^p]``
for i.i.d. standard normal ``X`` and ``p = 1 - 2h``, and ``c = sqrt(pi) 2^{h-1/2}``.
The constant equals ``Gamma(1-h) / E|X|^p``, which is what makes the single-gap
kernel ``Gamma(1-h) w^{h-1}``.

``J_n`` is estimated by Monte Carlo over ``X``; ``h_n`` is also computed by
direct quadrature over ``eta`` for ``n <= 3`` as an independent route.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gamma, pi, sqrt
from typing import Sequence

import numpy as np
from scipy import special

from . import quadrature as qd
from .errors import BudgetTooSmall, InvalidInput, NonConvergent
from .report import Report
from .simplex import mixing_weights

DEFAULT_SEED = 0x5EED
BATCH = 1 << 16
MAX_RELATIVE_ERROR = 0.10
INFINITE_VARIANCE_LAMBDA = 1e-3


class Method(enum.Enum):
    Exact = "Exact"
    Quadrature = "Quadrature"
    MonteCarlo = "MonteCarlo"


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float
    method: Method
    budget: int = 0
    flags: tuple[str, ...] = ()

    @property
    def relative_error(self) -> float:
        if self.value == 0:
            return 0.0 if self.std_error == 0 else float("inf")
        return abs(self.std_error / self.value)


def thread_count() -> int:
    """Worker threads for batched sampling, from ``PAMLAB_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("PAMLAB_THREADS", "1")))
    except ValueError:
        return 1


def abs_moment(p: float) -> float:
    """``E|X|^p`` for a standard normal ``X`` and ``p > -1``."""
    return 2 ** (p / 2) * gamma((p + 1) / 2) / sqrt(pi)


def shifted_abs_moment(mu, sigma, p: float):
    """``E|mu + sigma Z|^p`` for standard normal ``Z``, elementwise in ``mu``."""
    mu = np.asarray(mu, dtype=float)
    z = mu * mu / (2 * sigma * sigma)
    return sigma**p * abs_moment(p) * special.hyp1f1(-p / 2, 0.5, -z)


def kernel_constant(h: float) -> float:
    """Per-gap constant ``Gamma(1 - h) / E|X|^{1-2h}``."""
    return gamma(1 - h) / abs_moment(1 - 2 * h)


def kernel_prefactor(h: float, w) -> float:
    """Deterministic factor in front of ``J_n`` in the kernel."""
    w = np.asarray(w, dtype=float)
    n = w.size
    c = kernel_constant(h)
    value = c**n * w[-1] ** (h - 1)
    if n > 1:
        value *= np.prod(w[:-1] ** (2 * h - 1.5))
        value *= np.prod((w[1:] + w[:-1]) ** (0.5 - h))
    return float(value)


# ---------------------------------------------------------------------------
# Monte Carlo for J_n

def _check_lambdas(lambdas) -> np.ndarray:
    """Full weight vector ``(1, lambda_2, ..., lambda_n)`` from ``lambda_2, ..., lambda_n``."""
    tail = np.asarray(lambdas, dtype=float).reshape(-1)
    if np.any(tail <= 0) or np.any(tail > 1):
        raise InvalidInput("mixing weights must lie in (0, 1]")
    return np.concatenate([[1.0], tail])


def _check_hurst(h: float) -> None:
    if not 0 < h < 1:
        raise InvalidInput(f"spatial Hurst parameter {h!r} is outside (0, 1)")


def _frak_batch(p: float, lam: np.ndarray, size: int, seed_seq: np.random.SeedSequence):
    """Samples of an unbiased estimator of ``J_n`` (``n >= 2``)."""
    n = lam.size
    rng = np.random.default_rng(seed_seq)
    x = rng.standard_normal((n - 1, size))
    comp = np.sqrt(1 - lam**2)
    y = np.abs(x[0]) ** p
    for i in range(1, n - 1):
        y *= np.abs(lam[i] * x[i] - comp[i] * x[i - 1]) ** p
    # the last coordinate enters through one factor only: integrate it out
    last = shifted_abs_moment(comp[-1] * x[-1], lam[-1], p)
    if n == 2 and p < 0 and comp[-1] > 0:
        # subtract the singular part of |x_1|^p near 0, whose mean is known
        cut = min(1.0, lam[-1] / comp[-1])
        at_zero = lam[-1] ** p * abs_moment(p)
        inside = np.abs(x[0]) < cut
        mean_inside = abs_moment(p) * special.gammainc((p + 1) / 2, cut * cut / 2)
        return y * (last - at_zero * inside) + at_zero * mean_inside
    return y * last


def _combine(parts):
    """Pool (count, mean, M2) triples."""
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def _sample_mean(fn, samples: int, seed: int):
    """Mean and standard error of ``fn(size, seed_seq)`` over ``samples`` draws."""
    sizes = [BATCH] * (samples // BATCH)
    if samples % BATCH:
        sizes.append(samples % BATCH)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(args):
        size, seq = args
        y = fn(size, seq)
        m = float(np.mean(y))
        return size, m, float(np.sum((y - m) ** 2))

    threads = min(thread_count(), len(sizes))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, zip(sizes, seqs)))
    else:
        parts = [run(a) for a in zip(sizes, seqs)]
    n, mean, m2 = _combine(parts)
    se = sqrt(m2 / (n - 1) / n) if n > 1 else float("inf")
    return mean, se


def frak_I_exact_n1(h_k: float) -> Estimate:
    """``J_1 = E|X|^{1-2h_k}`` in closed form."""
    _check_hurst(h_k)
    return Estimate(abs_moment(1 - 2 * h_k), 0.0, Method.Exact)


def frak_I_mc(h_k: float, lambdas, samples: int = 1_000_000, seed: int = DEFAULT_SEED) -> Estimate:
    """Estimate ``J_n(lambda)`` by Monte Carlo over the Gaussian vector.

    ``lambdas`` holds ``lambda_2, ..., lambda_n``, so ``n = len(lambdas) + 1``
    and an empty sequence gives the closed form for one gap.  The last
    coordinate is integrated in closed
    form.  For two gaps and ``h_k > 1/2`` the singular part of ``|X_1|^p`` at
    the origin is handled by a control variate with known mean, which keeps
    the variance finite.  No importance sampling is used.

    Raises :class:`BudgetTooSmall` if the relative standard error exceeds 10%.
    The flag ``InfiniteVariance`` is set when ``h_k >= 3/4`` and either some
    mixing weight is below ``1e-3`` or there are three or more gaps: the
    estimator then has infinite or marginal variance and the reported error
    is indicative only.
    """
    _check_hurst(h_k)
    lam = _check_lambdas(lambdas)
    n = lam.size
    p = 1 - 2 * h_k
    flags = ()
    if h_k >= 0.75 and n > 1 and (n > 2 or np.min(lam[1:]) < INFINITE_VARIANCE_LAMBDA):
        flags = ("InfiniteVariance",)
    if n == 1:
        return Estimate(abs_moment(p), 0.0, Method.Exact, 0, flags)
    if p == 0:
        return Estimate(1.0, 0.0, Method.Exact, 0, flags)
    if samples < 2:
        raise BudgetTooSmall("at least two samples are needed")
    mean, se = _sample_mean(lambda size, seq: _frak_batch(p, lam, size, seq), samples, seed)
    est = Estimate(mean, se, Method.MonteCarlo, samples, flags)
    if not np.isfinite(mean) or est.relative_error > MAX_RELATIVE_ERROR:
        raise BudgetTooSmall(
            f"relative standard error {est.relative_error:.3g} exceeds {MAX_RELATIVE_ERROR}"
        )
    return est


def frak_I_sweep(h_k: float, lambdas: Sequence, samples: int = 1_000_000, seed: int = DEFAULT_SEED):
    """``frak_I_mc`` at each mixing-weight vector, with the same seed for all.

    Sharing the seed makes the estimates smooth in ``lambda``.
    """
    return [frak_I_mc(h_k, lam, samples, seed) for lam in lambdas]


def frak_I_table(h_k: float, grids: Sequence[np.ndarray], samples: int = 20_000,
                 seed: int = DEFAULT_SEED) -> np.ndarray:
    """Plain product estimates of ``J_n`` on a tensor grid of mixing weights.

    ``grids[i]`` holds the values of ``lambda_{i+2}``; the result has shape
    ``(len(grids[0]), ...)``.  All grid points share the same Gaussian draws.
    """
    _check_hurst(h_k)
    p = 1 - 2 * h_k
    n = len(grids) + 1
    shape = tuple(len(g) for g in grids)
    if p == 0:
        return np.ones(shape)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, samples))
    first = np.abs(x[0]) ** p
    out = np.empty(shape)
    for idx in np.ndindex(*shape):
        y = first.copy()
        for i, j in enumerate(idx, start=1):
            lam = grids[i - 1][j]
            y *= np.abs(lam * x[i] - sqrt(1 - lam * lam) * x[i - 1]) ** p
        out[idx] = y.mean()
    return out


def h_kn_gaussian(h_k: float, w, samples: int = 200_000, seed: int = DEFAULT_SEED) -> Estimate:
    """Kernel value from the Gaussian representation (Monte Carlo for ``n >= 2``)."""
    _check_hurst(h_k)
    w = np.asarray(w, dtype=float)
    lam = mixing_weights(w)
    pre = kernel_prefactor(h_k, w)
    j = frak_I_mc(h_k, lam[1:], samples, seed)
    return Estimate(pre * j.value, pre * j.std_error, j.method, j.budget, j.flags)


# ---------------------------------------------------------------------------
# direct quadrature over eta, n <= 3

TAIL_WIDTHS = 10.0
NONCONVERGENCE_TOL = 0.01


def _gauss_power(w: float, p: float, center: float, level: qd.Level) -> float:
    """``int exp(-w z^2) |z - center|^p dz`` by singular quadrature."""
    half = TAIL_WIDTHS / sqrt(w)
    x, wt = qd.rule(-half, half, [(center, p)], level, max_cell=1 / sqrt(w))
    return float(np.dot(wt, np.exp(-w * x * x) * np.abs(x - center) ** p))


def _chain_start(w1: float, p: float, x: float, level: qd.Level) -> float:
    """``int exp(-w1 y^2) |y|^p |x - y|^p dy``."""
    half = TAIL_WIDTHS / sqrt(w1)
    yy, wt = qd.rule(-half, half, [(0.0, p), (x, p)], level, max_cell=1 / sqrt(w1))
    return float(np.dot(wt, np.exp(-w1 * yy * yy) * np.abs(yy) ** p * np.abs(x - yy) ** p))


def _h_direct(h: float, w: np.ndarray, level: qd.Level) -> float:
    p = 1 - 2 * h
    n = w.size
    if n == 1:
        return _gauss_power(w[0], p, 0.0, level)
    # integrate over the second time's variable last: the chain splits there
    w2 = w[1]
    half = TAIL_WIDTHS / sqrt(w2)
    cusp = min(0.0, 2 * p + 1)
    xs, wt = qd.rule(-half, half, [(0.0, cusp)], level, max_cell=1 / sqrt(w2))
    vals = np.array([_chain_start(w[0], p, x, level) for x in xs])
    vals *= np.exp(-w2 * xs * xs)
    if n == 3:
        vals *= np.array([_gauss_power(w[2], p, x, level) for x in xs])
    return float(np.dot(wt, vals))


def h_kn_quadrature(h_k: float, w) -> Estimate:
    """Kernel value by direct quadrature over ``eta`` (``n <= 3`` gaps).

    The reported error is the difference between two refinement levels;
    :class:`NonConvergent` is raised when it exceeds 1% of the value.
    """
    _check_hurst(h_k)
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or not 1 <= w.size <= 3:
        raise InvalidInput("direct quadrature handles one to three gaps")
    if np.any(w <= 0):
        raise InvalidInput("gaps must be positive")
    value, err = qd.two_levels(lambda lv: _h_direct(h_k, w, lv))
    if not np.isfinite(value) or err > NONCONVERGENCE_TOL * abs(value):
        raise NonConvergent(f"refinement levels differ by {err:.3g} on {value:.6g}")
    return Estimate(value, err, Method.Quadrature)


# ---------------------------------------------------------------------------
# bound verification

SLOPE_TOLERANCE = 0.05


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx, ly = np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def random_lambda_grid(n: int, count: int, seed: int = DEFAULT_SEED, smallest: float = 1e-3) -> list:
    """``count`` configurations of ``n - 1`` mixing weights, log-uniform in ``[smallest, 1]``."""
    rng = np.random.default_rng(seed)
    return [np.exp(rng.uniform(np.log(smallest), 0.0, size=n - 1)) for _ in range(count)]


def geometric_lambda_grid(lo: float, hi: float, points: int) -> list:
    """Two-gap configurations ``(lambda_2,)`` on a geometric grid from ``hi`` down to ``lo``."""
    return [np.array([x]) for x in np.geomspace(hi, lo, points)]


def verify_frakI_bounds(h_k: float, n: int, lambda_grid: Sequence, samples: int = 1_000_000,
                        seed: int = DEFAULT_SEED, spread_limit: float = 10.0,
                        floor: float = 0.05) -> Report:
    """Check the two-sided bounds on ``J_n`` over a grid of mixing weights.

    Each grid entry is ``(lambda_2, ..., lambda_n)``.  For ``h_k < 3/4`` the
    n-th roots ``J_n^{1/n}`` must stay in a band: all above ``floor`` and
    max/min below ``spread_limit``.  For ``h_k >= 3/4`` only two gaps are
    supported; the log-log slope of ``J_2`` in ``lambda_2`` must lie in
    ``[-(2h_k - 1), -(4h_k - 3)]`` widened by 0.05, and the compensated values
    ``J_2 lambda_2^{4h_k-3}`` are recorded.

    Raises :class:`BudgetTooSmall` if any estimate has relative error above 10%.
    """
    _check_hurst(h_k)
    if not 1 <= n <= 4:
        raise InvalidInput("bound verification supports one to four gaps")
    grid = [np.asarray(lam, dtype=float).reshape(-1) for lam in lambda_grid]
    if not grid:
        raise InvalidInput("empty grid of mixing weights")
    if any(lam.size != n - 1 for lam in grid):
        raise InvalidInput(f"each grid entry needs {n - 1} mixing weights")
    heavy = h_k >= 0.75
    if heavy and n != 2:
        raise InvalidInput("for h_k >= 3/4 the lower bound is only available with two gaps")
    estimates = frak_I_sweep(h_k, grid, samples, seed)
    values = np.array([e.value for e in estimates])
    rep = Report(f"J bounds, h_k={h_k!r}, n={n}, {len(grid)} configurations")
    rep.values["estimates"] = estimates
    rep.add("positive", bool(np.all(values > 0)), f"min estimate {values.min():.6g}")
    slope = None
    if n == 2 and len({float(lam[0]) for lam in grid}) > 1:
        slope = loglog_slope([lam[0] for lam in grid], values)
        rep.values["slope"] = slope
    if not heavy:
        roots = values ** (1.0 / n)
        spread = float(roots.max() / roots.min())
        rep.values.update(min_root=float(roots.min()), max_root=float(roots.max()), spread=spread)
        rep.add("lower band", roots.min() > floor, f"min J^(1/n) = {roots.min():.4g} (floor {floor})")
        rep.add("spread", spread < spread_limit, f"max/min J^(1/n) = {spread:.4g} (limit {spread_limit})")
        if slope is not None:
            rep.add("slope reported", True, f"log-log slope {slope:.4f}")
        return rep
    lam2 = np.array([lam[0] for lam in grid])
    compensated = values * lam2 ** (4 * h_k - 3)
    rep.values.update(min_compensated=float(compensated.min()), max_compensated=float(compensated.max()))
    rep.add("compensated range", True,
            f"J lambda^(4h-3) in [{compensated.min():.4g}, {compensated.max():.4g}]")
    lo, hi = -(2 * h_k - 1) - SLOPE_TOLERANCE, -(4 * h_k - 3) + SLOPE_TOLERANCE
    if slope is None:
        rep.add("slope", False, "need at least two distinct lambda_2 values")
    else:
        rep.add("slope", lo <= slope <= hi, f"log-log slope {slope:.4f} in [{lo:.2f}, {hi:.2f}]")
    return rep
