"""Singular time integrals and the inequalities that bound them.

The integrals here are products of powers of affine functions of the time
variables over ordered simplices or boxes.  They are computed by iterated
one-dimensional passes of the graded Gauss rules in :mod:`pamlab.quadrature`:
each pass splits its interval at every point where a factor vanishes, so both
genuine and nearby singularities are resolved by geometric grading.  The
reported error is the difference between two refinement levels.

The time covariance is taken as ``|u|^{-gamma}`` with unit constant, so all
bound checks are constant-free ratio tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gamma as gamma_fn, isfinite, pi

import numpy as np
from scipy import optimize, special

from . import quadrature as qd
from .errors import InvalidInput, NonConvergent, NonIntegrable, PreconditionViolated
from .gausskernel import DEFAULT_SEED, Estimate, Method
from .report import Report

COINCIDENCE = 1e-12
I1_TOLERANCE = 0.01
I2_TOLERANCE = 0.02
STABILITY = 0.02


def _check_exponent(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise InvalidInput(f"exponent {name} = {value!r} must be a finite number >= 0")
    if value >= 1:
        raise NonIntegrable(f"exponent {name} = {value!r} is not below 1")
    return value


def _estimate(compute, tolerance: float) -> Estimate:
    value, err = qd.two_levels(compute)
    if not isfinite(value) or err > tolerance * abs(value):
        raise NonConvergent(f"refinement levels differ by {err:.3g} on {value:.6g}")
    return Estimate(float(value), float(err), Method.Quadrature)


def _iterated(outer, inner, integrand, level: qd.Level) -> float:
    """``int dx int dy f(x, y)`` with ``outer = (a, b, singular)`` and ``inner(x)`` alike."""
    xs, wx = qd.rule(*outer, level=level)
    total = 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for x, w in zip(xs, wx):
            a, b, singular = inner(x)
            ys, wy = qd.rule(a, b, singular, level)
            if ys.size:
                vals = integrand(x, ys)
                # a node can round onto a singular point only inside a piece
                # shorter than the float spacing; its weight is negligible there
                vals = np.where(np.isfinite(vals), vals, 0.0)
                total += w * float(np.dot(wy, vals))
    return total


# ---------------------------------------------------------------------------
# integrability of products of powers of affine forms

@dataclass(frozen=True)
class Hyperplane:
    """The set ``normal . x = offset``, carrying a singular exponent."""
    normal: tuple[float, ...]
    offset: float
    exponent: float
    label: str = ""


def _point_violations(lines, inside, dim_check_tol=COINCIDENCE):
    """Points of a planar arrangement inside the closed domain where exponents sum to 2 or more."""
    bad = []
    for p, q in itertools.combinations(lines, 2):
        m = np.array([p.normal, q.normal], dtype=float)
        if abs(np.linalg.det(m)) < dim_check_tol:
            continue
        pt = np.linalg.solve(m, [p.offset, q.offset])
        if not inside(pt):
            continue
        scale = 1 + float(np.max(np.abs(pt)))
        # only float rounding counts as passing through the point
        through = [h for h in lines
                   if abs(np.dot(h.normal, pt) - h.offset) <= 1e-13 * scale * (1 + np.linalg.norm(h.normal))]
        total = sum(h.exponent for h in through)
        if total >= 2:
            bad.append((tuple(pt), total, [h.label for h in through]))
    return bad


def singular_flats(hyperplanes, a_ub, b_ub) -> list[tuple[tuple[str, ...], float, int]]:
    """Flats of the arrangement where the integral over ``a_ub x <= b_ub`` diverges.

    A flat ``G`` (an intersection of hyperplanes, including the facets of the
    domain, given with exponent 0) is relevant when it meets the closed domain
    in a set of full dimension in ``G``.  The integral is then finite near
    ``G`` only if the exponents of the hyperplanes containing ``G`` sum to less
    than its codimension.  Returns ``(labels, exponent sum, codim)`` for each
    violated flat.
    """
    a_ub = np.asarray(a_ub, dtype=float)
    b_ub = np.asarray(b_ub, dtype=float)
    dim = a_ub.shape[1]
    planes = list(hyperplanes)
    normals = np.array([h.normal for h in planes], dtype=float)
    offsets = np.array([h.offset for h in planes], dtype=float)
    seen = set()
    bad = []
    for size in range(1, dim + 1):
        for subset in itertools.combinations(range(len(planes)), size):
            rows = normals[list(subset)]
            if np.linalg.matrix_rank(rows) != size:
                continue
            # hyperplanes containing the flat: normal in the row space and offset consistent
            proj = np.linalg.lstsq(rows.T, normals.T, rcond=None)[0].T
            contains = [j for j in range(len(planes))
                        if np.allclose(proj[j] @ rows, normals[j], atol=1e-12)
                        and abs(proj[j] @ offsets[list(subset)] - offsets[j]) < 1e-10]
            key = frozenset(contains)
            if key in seen:
                continue
            seen.add(key)
            total = sum(planes[j].exponent for j in contains)
            if total < size:
                continue
            # full-dimensional intersection with the closed domain
            in_span = np.array([np.allclose(np.linalg.lstsq(rows.T, a, rcond=None)[0] @ rows, a, atol=1e-12)
                                for a in a_ub])
            slack = np.where(in_span, 0.0, 1.0)
            c = np.zeros(dim + 1)
            c[-1] = -1.0
            res = optimize.linprog(
                c,
                A_ub=np.hstack([a_ub, slack[:, None]]), b_ub=b_ub,
                A_eq=np.hstack([rows, np.zeros((size, 1))]), b_eq=offsets[list(subset)],
                bounds=[(None, None)] * dim + [(None, 1.0)], method="highs",
            )
            if res.status == 0 and -res.fun > 1e-9:
                bad.append((tuple(planes[j].label for j in contains), total, size))
    return bad


# ---------------------------------------------------------------------------
# the two-gap block

def _check_i1(s2, r2, rho1, gamma):
    rho1 = _check_exponent("rho1", rho1)
    gamma = _check_exponent("gamma", gamma)
    if not (s2 > 0 and r2 > 0):
        raise InvalidInput("anchors must be positive")
    if abs(s2 - r2) <= COINCIDENCE * max(s2, r2) and 2 * rho1 + gamma >= 2:
        raise NonIntegrable("2 rho1 + gamma >= 2 at coincident anchors")
    return rho1, gamma


def _i1(s2: float, r2: float, rho: float, gam: float, level: qd.Level) -> float:
    # distances u = s2 - s1, v = r2 - r1 put the strongest corner at the origin
    delta = s2 - r2
    join = min(0.0, 1 - gam - rho)
    outer = (0.0, s2, [(0.0, -rho), (delta, join), (s2, 0.0)])

    def inner(u):
        return 0.0, r2, [(0.0, -rho), (u - delta, -gam)]

    def f(u, v):
        return u**-rho * v**-rho * np.abs(v - u + delta) ** -gam

    return _iterated(outer, inner, f, level)


def quad_I1(s2: float, r2: float, rho1: float, gamma: float) -> Estimate:
    """``int_{0<s1<s2, 0<r1<r2} |s1-r1|^{-gamma} (s2-s1)^{-rho1} (r2-r1)^{-rho1}``.

    Raises :class:`NonIntegrable` when an exponent is 1 or more (or when
    ``2 rho1 + gamma >= 2`` at ``s2 = r2``) and :class:`NonConvergent` when
    two refinement levels differ by more than 1%.
    """
    s2, r2 = float(s2), float(r2)
    rho1, gamma = _check_i1(s2, r2, rho1, gamma)
    return _estimate(lambda lv: _i1(s2, r2, rho1, gamma, lv), I1_TOLERANCE)


def i1_degree(rho1: float, gamma: float) -> float:
    """Homogeneity degree of the two-gap block."""
    return 2 - 2 * rho1 - gamma


def hls_sharp_constant(gamma: float) -> float:
    """Best constant of the one-dimensional HLS inequality with kernel ``|u|^{-gamma}``.

    For ``p = q = 2 / (2 - gamma)`` it is
    ``pi^{gamma - 1/2} Gamma((1 - gamma)/2) / Gamma(1 - gamma/2)``.
    """
    if not 0 <= gamma < 1:
        raise InvalidInput("gamma must lie in [0, 1)")
    return pi ** (gamma - 0.5) * gamma_fn((1 - gamma) / 2) / gamma_fn(1 - gamma / 2)


def i1_hls_bound(s2: float, r2: float, rho1: float, gamma: float) -> float:
    """Sharp HLS bound ``C (B(1, 1 - rho1/h0))^{2 h0} (s2 r2)^{h0 - rho1}``, ``h0 = 1 - gamma/2``."""
    h0 = 1 - gamma / 2
    if not rho1 < h0:
        raise PreconditionViolated("the HLS bound needs rho1 < h0")
    beta = 1 / (1 - rho1 / h0)
    return hls_sharp_constant(gamma) * beta ** (2 * h0) * (s2 * r2) ** (h0 - rho1)


I1_ANCHORS = ((1.0, 1.0), (1.0, 0.5), (1.0, 0.1), (0.3, 1.0), (2.0, 0.7))
I1_SCALE = 4.0


def verify_I1(rho1: float, gamma: float, anchors=I1_ANCHORS, scale: float = I1_SCALE) -> Report:
    """Check the two-gap block against its HLS bound, homogeneity and diagonal closed form.

    PASS requires quadrature at most the bound at every anchor, scaling both
    anchors by ``scale`` to multiply the value by ``scale^degree`` within
    1e-6 relative, and the value at ``(1, 1)`` to match
    ``2 B(1 - rho1, 1 - gamma) / (2 - 2 rho1 - gamma)`` within 1e-7 relative.
    """
    rep = Report(f"two-gap block, rho1={rho1!r}, gamma={gamma!r}")
    deg = i1_degree(rho1, gamma)
    ratios, lowest, drift = [], [], []
    for s2, r2 in anchors:
        est = quad_I1(s2, r2, rho1, gamma)
        ratios.append(est.value / i1_hls_bound(s2, r2, rho1, gamma))
        lowest.append(ratios[-1] * (1 - est.relative_error - 1e-12))
        scaled = quad_I1(scale * s2, scale * r2, rho1, gamma).value
        drift.append(abs(scaled / (scale**deg * est.value) - 1))
    rep.values.update(ratios=ratios, homogeneity_errors=drift)
    # the bound is attained at rho1 = gamma = 0, so allow the quadrature error
    rep.add("below HLS bound", max(lowest) <= 1, f"max value/bound {max(ratios):.6g}")
    rep.add("homogeneity", max(drift) <= 1e-6, f"max relative error {max(drift):.3g} (degree {deg:.6g})")
    closed = 2 * special.beta(1 - rho1, 1 - gamma) / deg
    diag = quad_I1(1.0, 1.0, rho1, gamma).value
    err = abs(diag / closed - 1)
    rep.values["diagonal"] = (diag, closed)
    rep.add("diagonal closed form", err <= 1e-7, f"{diag:.12g} vs {closed:.12g}")
    return rep


# --- tabulated two-gap block, used inside the three-gap integral

_TABLE_RATIO = 0.25
_TABLE_DEPTH = 12
_TABLE_ORDER = 8


class _GradedChebyshev:
    """Piecewise Chebyshev interpolant on cells graded toward both ends of ``(0, 1]``."""

    def __init__(self, f, edges, order: int):
        self.edges = np.asarray(edges, dtype=float)
        k = np.arange(order)
        self.nodes = np.cos(pi * (k + 0.5) / order)
        coefs = []
        for lo, hi in zip(self.edges[:-1], self.edges[1:]):
            x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * self.nodes
            vals = np.array([f(v) for v in x])
            coefs.append(np.polynomial.chebyshev.chebfit(self.nodes, vals, order - 1))
        self.coefs = np.array(coefs)

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), self.edges[0], self.edges[-1])
        idx = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.coefs) - 1)
        lo, hi = self.edges[idx], self.edges[idx + 1]
        t = (2 * x - lo - hi) / (hi - lo)
        c = self.coefs[idx]
        b1 = np.zeros_like(t)
        b2 = np.zeros_like(t)
        for j in range(c.shape[1] - 1, 0, -1):
            b1, b2 = 2 * t * b1 - b2 + c[:, j], b1
        return t * b1 - b2 + c[:, 0]


def _table_edges():
    left = 0.5 * _TABLE_RATIO ** np.arange(_TABLE_DEPTH, -1, -1)
    right = 1 - 0.5 * _TABLE_RATIO ** np.arange(1, _TABLE_DEPTH + 1)
    return np.concatenate([left, right, [1.0]])


@lru_cache(maxsize=32)
def _i1_table(rho: float, gam: float, level: qd.Level) -> _GradedChebyshev:
    # I1(1, x) = x^{1 - rho} psi(x); psi is bounded and continuous on (0, 1]
    return _GradedChebyshev(lambda x: _i1(1.0, x, rho, gam, level) / x ** (1 - rho),
                            _table_edges(), _TABLE_ORDER)


def i1_tabulated(s, r, rho1: float, gamma: float, level: qd.Level = qd.FINE):
    """Two-gap block at arrays of anchors, by homogeneity and symmetry from a table.

    The table interpolates the quadrature to about 1e-6 relative.  Near
    ``rho1 + gamma = 1`` the block has a logarithmic inner singularity and
    the quadrature itself is only good to about 1e-3.
    """
    s, r = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(r, dtype=float))
    hi, lo = np.maximum(s, r), np.minimum(s, r)
    out = np.zeros(hi.shape)
    pos = lo > 0
    x = lo[pos] / hi[pos]
    out[pos] = hi[pos] ** i1_degree(rho1, gamma) * x ** (1 - rho1) * _i1_table(rho1, gamma, level)(x)
    return out


# ---------------------------------------------------------------------------
# the three-gap block

def i2_hyperplanes(s3: float, r3: float, rho1: float, rho2: float, gamma: float):
    """Singular hyperplanes and closed domain of the three-gap block in ``(s1, s2, r1, r2)``."""
    planes = [
        Hyperplane((1, 0, 0, 0), 0.0, 0.0, "s1=0"),
        Hyperplane((0, 0, 1, 0), 0.0, 0.0, "r1=0"),
        Hyperplane((-1, 1, 0, 0), 0.0, rho1, "s2=s1"),
        Hyperplane((0, 0, -1, 1), 0.0, rho1, "r2=r1"),
        Hyperplane((0, 1, 0, 0), s3, rho2, "s2=s3"),
        Hyperplane((0, 0, 0, 1), r3, rho2, "r2=r3"),
        Hyperplane((1, 0, -1, 0), 0.0, gamma, "s1=r1"),
        Hyperplane((0, 1, 0, -1), 0.0, gamma, "s2=r2"),
    ]
    a_ub = [(-1, 0, 0, 0), (1, -1, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)]
    b_ub = [0, 0, s3, 0, 0, r3]
    return planes, a_ub, b_ub


def _i2(s3: float, r3: float, rho1: float, rho2: float, gam: float, level: qd.Level) -> float:
    table = _i1_table(rho1, gam, level)
    e1 = i1_degree(rho1, gam)
    # distances u = s3 - s2, v = r3 - r2
    delta = s3 - r3
    join = min(0.0, 1 - gam - rho2)
    outer = (0.0, s3, [(0.0, -rho2), (delta, join), (s3, 0.0)])

    def inner(u):
        return 0.0, r3, [(0.0, -rho2), (u - delta, -gam), (r3, 0.0)]

    def f(u, v):
        s2, r2 = s3 - u, r3 - v
        hi, lo = np.maximum(s2, r2), np.minimum(s2, r2)
        x = lo / hi
        block = hi**e1 * x ** (1 - rho1) * table(x)
        return u**-rho2 * v**-rho2 * np.abs(v - u + delta) ** -gam * block

    return _iterated(outer, inner, f, level)


def _check_i2(s3, r3, rho1, rho2, gamma):
    rho1 = _check_exponent("rho1", rho1)
    rho2 = _check_exponent("rho2", rho2)
    gamma = _check_exponent("gamma", gamma)
    if not (s3 > 0 and r3 > 0):
        raise InvalidInput("anchors must be positive")
    bad = singular_flats(*i2_hyperplanes(s3, r3, rho1, rho2, gamma))
    if bad:
        labels, total, codim = bad[0]
        raise NonIntegrable(f"exponents sum to {total:.4g} >= {codim} on the flat {' & '.join(labels)}")
    return rho1, rho2, gamma


def i2_degree(rho1: float, rho2: float, gamma: float) -> float:
    """Homogeneity degree of the three-gap block."""
    return 4 - 2 * rho1 - 2 * rho2 - 2 * gamma


def quad_I2(s3: float, r3: float, rho1: float, rho2: float, gamma: float) -> Estimate:
    """Three-gap block: the two-gap block integrated against the next gap factors.

    ``int |s2-r2|^{-gamma} (s3-s2)^{-rho2} (r3-r2)^{-rho2} I1(s2, r2) ds2 dr2``
    over ``0 < s2 < s3, 0 < r2 < r3``.  The inner block is tabulated once per
    exponent pair using its homogeneity.  Raises :class:`NonIntegrable` when
    some flat carries too much singularity and :class:`NonConvergent` on a
    refinement disagreement above 2%.
    """
    s3, r3 = float(s3), float(r3)
    rho1, rho2, gamma = _check_i2(s3, r3, rho1, rho2, gamma)
    return _estimate(lambda lv: _i2(s3, r3, rho1, rho2, gamma, lv), I2_TOLERANCE)


def sup_I2(rho1: float, rho2: float, gamma: float, grid: int = 16) -> Report:
    """Maximum of the three-gap block over the anchor grid ``{k/grid}^2``.

    Homogeneity and symmetry reduce the grid to its distinct ratios
    ``min/max``.  PASS when every value is finite and the maximum is stable
    within 2% between refinement levels.
    """
    rho1, rho2, gamma = _check_i2(1.0, 1.0, rho1, rho2, gamma)
    e2 = i2_degree(rho1, rho2, gamma)
    ratios = sorted({(min(i, j) / max(i, j)) for i in range(1, grid + 1) for j in range(1, grid + 1)})
    fine, coarse = {}, {}
    for x in ratios:
        fine[x] = _i2(1.0, x, rho1, rho2, gamma, qd.FINE)
        coarse[x] = _i2(1.0, x, rho1, rho2, gamma, qd.COARSE)
    best_f = best_c = -np.inf
    arg = None
    for i in range(1, grid + 1):
        for j in range(1, grid + 1):
            m = max(i, j) / grid
            x = min(i, j) / max(i, j)
            vf, vc = m**e2 * fine[x], m**e2 * coarse[x]
            if vf > best_f:
                best_f, arg = vf, (i / grid, j / grid)
            best_c = max(best_c, vc)
    rep = Report(f"three-gap block, rho1={rho1!r}, rho2={rho2!r}, gamma={gamma!r}")
    rep.values.update(sup=best_f, sup_coarse=best_c, argmax=arg, degree=e2)
    finite = all(np.isfinite(v) for v in fine.values())
    rep.add("finite", finite, f"sup {best_f:.6g} at (s3, r3) = {arg}")
    drift = abs(best_f - best_c) / abs(best_f) if best_f else 0.0
    rep.add("refinement", drift <= STABILITY, f"relative change {drift:.2e} (limit {STABILITY})")
    return rep


# ---------------------------------------------------------------------------
# one-dimensional kernels with three singular points

def _frakb_interval(which: str):
    if which == "B1":
        return 0.0, 0.5
    if which == "B2":
        return 0.5, 1.0
    raise InvalidInput(f"unknown kernel {which!r}; expected B1 or B2")


def _frakb(which, alpha, beta, gam, a, b, level):
    if which == "B1":
        sing = [(0.0, -beta)] + ([(b / a, -gam)] if a != 0 else [])
        x, w = qd.rule(0.0, 0.5, sing, level)
        vals = x**-beta * (1 - x) ** -alpha * np.abs(a * x - b) ** -gam
    else:
        # reflected variable y = 1 - u keeps the end u = 1 at the origin
        sing = [(0.0, -alpha)] + ([((a - b) / a, -gam)] if a != 0 else [])
        y, w = qd.rule(0.0, 0.5, sing, level)
        vals = (1 - y) ** -beta * y**-alpha * np.abs(a - b - a * y) ** -gam
    return float(np.dot(w, vals))


def quad_frakB(which: str, alpha: float, beta: float, gamma: float, a: float, b: float) -> Estimate:
    """``int u^{-beta} (1-u)^{-alpha} |a u - b|^{-gamma} du`` over ``(0, 1/2)`` (B1) or ``(1/2, 1)`` (B2)."""
    lo, hi = _frakb_interval(which)
    alpha = _check_exponent("alpha", alpha)
    beta = _check_exponent("beta", beta)
    gamma = _check_exponent("gamma", gamma)
    a, b = float(a), float(b)
    if a == 0 and b == 0 and gamma > 0:
        raise NonIntegrable("the third factor vanishes identically")
    if a != 0:
        root = b / a
        if abs(root) <= COINCIDENCE and lo == 0 and beta + gamma >= 1:
            raise NonIntegrable("beta + gamma >= 1 with the third zero at u = 0")
        if abs(root - 1) <= COINCIDENCE and hi == 1 and alpha + gamma >= 1:
            raise NonIntegrable("alpha + gamma >= 1 with the third zero at u = 1")
    return _estimate(lambda lv: _frakb(which, alpha, beta, gamma, a, b, lv), STABILITY)


def frakB_bound(which: str, alpha: float, beta: float, gamma: float, a: float, b: float, q: float) -> float:
    """``|a|^{-q} |b|^{q - gamma}`` (B1) or ``|a|^{-q} |b - a|^{q - gamma}`` (B2)."""
    other = b if which == "B1" else b - a
    return abs(a) ** -q * abs(other) ** (q - gamma)


def frakB_q_max(which: str, alpha: float, beta: float, gamma: float) -> float:
    """Largest admissible ``q``: ``(1 - beta) ^ gamma`` for B1, ``(1 - alpha) ^ gamma`` for B2."""
    return min(1 - beta, gamma) if which == "B1" else min(1 - alpha, gamma)


SWEEP_DECADES = 6


CONTRACTION = 0.9     # increments shrinking at least this fast per step belong to a bounded tail


def _tail_growth(values) -> float:
    """Growth factor over the last step of a sweep toward a degeneration."""
    return float(values[-1] / values[-2]) if values[-2] > 0 else float("inf")


def _tail_limit(values) -> float:
    """Geometric extrapolation of a slowly converging tail, ``inf`` unless it contracts.

    The last three values must rise, with the last increment at most
    ``CONTRACTION`` times the one before.  Logarithmic growth has increment
    ratio near 1 and power growth above 1, so both give ``inf``.
    """
    v = np.asarray(values[-3:], dtype=float)
    d1, d2 = v[1] - v[0], v[2] - v[1]
    if not (d1 > 0 and d2 > 0 and d2 <= CONTRACTION * d1):
        return float("inf")
    r = d2 / d1
    return float(v[2] + d2 * r / (1 - r))


def _sweep_report(rep: Report, name: str, ratios_f, ratios_c, sequences):
    """Add finiteness, refinement and tail checks for a family of ratio sequences.

    A sequence passes its tail check when the last step grows by at most 2%
    or when its increments contract geometrically toward a finite limit.
    """
    rf, rc = np.asarray(ratios_f, dtype=float), np.asarray(ratios_c, dtype=float)
    finite = bool(np.all(np.isfinite(rf)) and np.all(rf > 0))
    drift = float(np.max(np.abs(rf - rc) / np.abs(rf))) if finite else float("inf")
    growth, limit, tails_ok = 0.0, 0.0, True
    for seq in sequences:
        vals = rf[list(seq)]
        g = _tail_growth(vals)
        growth = max(growth, g)
        if g > 1 + STABILITY:
            lim = _tail_limit(vals) if len(vals) >= 3 else float("inf")
            limit = max(limit, lim)
            tails_ok &= bool(np.isfinite(lim))
    rep.values.setdefault("max_ratio", {})[name] = float(np.max(rf)) if finite else float("inf")
    rep.values.setdefault("tail_growth", {})[name] = growth
    rep.values.setdefault("tail_limit", {})[name] = limit
    ok = finite and drift <= STABILITY and tails_ok
    detail = f"max ratio {np.max(rf):.4g}, refinement {drift:.1e}, tail growth {growth:.3f}"
    if limit > 0:
        detail += f", extrapolated limit {limit:.4g}"
    return ok, detail


def frakB_ratios(which: str, alpha: float, beta: float, gamma: float, q: float,
                 decades: int = SWEEP_DECADES):
    """Ratios of the kernel to its bound along sweeps of the anchor ratio.

    The ratio depends on ``b/a`` (B1) or ``(b-a)/a`` (B2) only.  That variable
    runs over ``+-10^k`` for ``k`` in ``-decades..decades``.  Returns
    ``(fine ratios, coarse ratios, sequences)``; each sequence lists indices
    running toward one degeneration.
    """
    ks = np.arange(-decades, decades + 1)
    points = []
    for sign in (1.0, -1.0):
        for k in ks:
            y = sign * 10.0**k
            b = y if which == "B1" else 1.0 + y
            points.append(b)
    fine, coarse = [], []
    for b in points:
        bound = frakB_bound(which, alpha, beta, gamma, 1.0, b, q)
        fine.append(_frakb(which, alpha, beta, gamma, 1.0, b, qd.FINE) / bound)
        coarse.append(_frakb(which, alpha, beta, gamma, 1.0, b, qd.COARSE) / bound)
    n = len(ks)
    seqs = []
    for base in (0, n):
        seqs.append(list(range(base + n - 1, base - 1, -1)))  # toward 0
        seqs.append(list(range(base, base + n)))               # toward infinity
    return fine, coarse, seqs, points


def verify_frakB(which: str, alpha: float, beta: float, gamma: float, q: float) -> Report:
    """Ratio test of one kernel against ``|a|^{-q} |.|^{q-gamma}`` over anchor sweeps."""
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not 0 < v < 1:
            raise PreconditionViolated(f"{name} must lie in (0, 1)")
    qmax = frakB_q_max(which, alpha, beta, gamma)
    if not 0 <= q <= qmax:
        raise PreconditionViolated(f"q = {q!r} outside [0, {qmax:.4g}]")
    rep = Report(f"{which} kernel, alpha={alpha!r}, beta={beta!r}, gamma={gamma!r}, q={q!r}")
    fine, coarse, seqs, _ = frakB_ratios(which, alpha, beta, gamma, q)
    ok, detail = _sweep_report(rep, which, fine, coarse, seqs)
    rep.add(f"{which} bounded", ok, detail)
    return rep


# ---------------------------------------------------------------------------
# the two-interval integral with one coupling factor

def mainterm_window(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    """Open-closed window ``(0 v (beta+gamma-1), (1-alpha) ^ gamma/2]`` for ``q2``."""
    return max(0.0, beta + gamma - 1), min(1 - alpha, gamma / 2)


def _check_mainterm(alpha, beta, gamma, a, A, b, B):
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not 0 <= v < 1:
            raise PreconditionViolated(f"{name} must lie in [0, 1)")
    if not gamma < 2 - beta - max(beta, alpha):
        raise PreconditionViolated("need gamma < 2 - beta - max(beta, alpha)")
    if not (a < A and b < B):
        raise PreconditionViolated("need a < A and b < B")


def _mainterm_quadrant(e_w, e_v, c0, cw, cv, gam, level):
    """``int_0^{1/2} int_0^{1/2}`` of the integrand in one quadrant of local coordinates.

    ``e_w = (exponent at w = 0, exponent at w = 1)`` in local orientation,
    likewise ``e_v``; the coupling form is ``c0 + cw w + cv v``.
    """
    w0, w1 = e_w
    v0, v1 = e_v
    outer_sing = [(0.0, -v0)]
    if cv != 0:
        outer_sing.append((-c0 / cv, min(0.0, 1 - gam - w0)))  # coupling zero meets w = 0
        outer_sing.append((-(c0 + 0.5 * cw) / cv, 0.0))        # and crosses w = 1/2
    vs, wv = qd.rule(0.0, 0.5, outer_sing, level)
    # the coupling vanishes at w = roots[i] for the outer node vs[i]
    roots = -(c0 + cv * vs) / cw

    def f(w, rows):
        return w**-w0 * (1 - w) ** -w1 * np.abs(w - roots[rows, None]) ** -gam

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        inner = qd.moving_point_integrals(0.5, -w0, roots, -gam, f, level)
        vals = vs**-v0 * (1 - vs) ** -v1 * inner
        vals = np.where(np.isfinite(vals), vals, 0.0)
    return abs(cw) ** -gam * float(np.dot(wv, vals))


def _mainterm(alpha, beta, gam, a, A, b, B, level):
    # s = a + (A - a) w, r = b + (B - b) v; each unit interval is split at 1/2
    # and measured from its nearer end, so coincident anchors sit at the origin
    la, lb = A - a, B - b
    scale = la ** (1 - alpha - beta) * lb ** (1 - alpha - beta)
    total = 0.0
    for w_right in (False, True):
        for v_right in (False, True):
            c0 = (A if w_right else a) - (B if v_right else b)
            cw = -la if w_right else la
            cv = lb if v_right else -lb
            e_w = (alpha, beta) if w_right else (beta, alpha)
            e_v = (alpha, beta) if v_right else (beta, alpha)
            total += _mainterm_quadrant(e_w, e_v, c0, cw, cv, gam, level)
    return scale * total


def _mainterm_lines(alpha, beta, gam, a, A, b, B):
    return [
        Hyperplane((1, 0), A, alpha, "s=A"), Hyperplane((1, 0), a, beta, "s=a"),
        Hyperplane((0, 1), B, alpha, "r=B"), Hyperplane((0, 1), b, beta, "r=b"),
        Hyperplane((1, -1), 0.0, gam, "s=r"),
    ]


def mainterm_divergence(alpha: float, beta: float, gamma: float, a: float, A: float, b: float, B: float):
    """First point of the closed rectangle where the integral diverges, as ``(point, sum, labels)``, or None."""
    lines = _mainterm_lines(alpha, beta, gamma, a, A, b, B)
    tol = 1e-12 * (1 + max(abs(a), abs(A), abs(b), abs(B)))

    def inside(p):
        return a - tol <= p[0] <= A + tol and b - tol <= p[1] <= B + tol

    bad = _point_violations(lines, inside)
    return bad[0] if bad else None


def mainterm_integral(alpha: float, beta: float, gamma: float, a: float, A: float, b: float,
                      B: float) -> Estimate:
    """``int_{a<s<A, b<r<B} |A-s|^{-alpha} |s-a|^{-beta} |s-r|^{-gamma} |B-r|^{-alpha} |r-b|^{-beta}``."""
    _check_mainterm(alpha, beta, gamma, a, A, b, B)
    bad = mainterm_divergence(alpha, beta, gamma, a, A, b, B)
    if bad:
        pt, total, labels = bad
        pt = tuple(float(c) for c in pt)
        raise NonIntegrable(f"exponents sum to {total:.4g} >= 2 at {pt} ({' & '.join(labels)})")
    return _estimate(lambda lv: _mainterm(alpha, beta, gamma, a, A, b, B, lv), STABILITY)


def mainterm_bound(alpha: float, beta: float, gamma: float, a: float, A: float, b: float, B: float,
                   q2: float) -> tuple[float, float]:
    """The two terms of the bound, ``(first, second)``."""
    e = 1 - alpha - beta
    first = (A - a) ** (e - gamma / 2) * (B - b) ** (e - gamma / 2)
    gap = abs(A - B)
    power = 2 * q2 - gamma
    far = 1.0 if power == 0 else (gap**power if gap > 0 else float("inf"))
    second = (A - a) ** (e - q2) * (B - b) ** (e - q2) * far
    return first, second


def _check_q2(alpha, beta, gamma, q2):
    lo, hi = mainterm_window(alpha, beta, gamma)
    if hi < lo or (hi == lo and hi > 0):
        raise PreconditionViolated(f"empty window for q2: ({lo:.4g}, {hi:.4g}]")
    # with gamma = 0 the window degenerates to the single point 0
    if not ((lo < q2 <= hi) or (q2 == lo == hi == 0)):
        raise PreconditionViolated(f"q2 = {q2!r} outside ({lo:.4g}, {hi:.4g}]")


MAX_DECADES = 12

# degenerating anchor families with a = 0, A = 1, indexed by a small parameter h
MAINTERM_FAMILIES = {
    "short, left aligned": lambda h: (0.0, 1.0, 0.0, h),
    "short, right aligned": lambda h: (0.0, 1.0, 1.0 - h, 1.0),
    "short, centred": lambda h: (0.0, 1.0, 0.5 - h / 2, 0.5 + h / 2),
    "long": lambda h: (0.0, 1.0, 0.0, 1.0 / h),
    "right ends meet from above": lambda h: (0.0, 1.0, -1.0, 1.0 + h),
    "right ends meet from below": lambda h: (0.0, 1.0, -1.0, 1.0 - h / 2),
}


def mainterm_anchor_sweep(decades: int = 3):
    """Anchor configurations ``(a, A, b, B)`` with ``a = 0, A = 1`` and sequences toward degenerations.

    The ratio of integral to bound is invariant under translation and scaling,
    so the first interval is fixed to ``(0, 1)``.  Sequences shrink the
    second interval at either end of the first or in its middle, grow it, and
    bring its right end toward ``A`` from both sides.  Each sequence runs over
    ``h = 10^-k`` for ``k = 0..decades``.
    """
    anchors, seqs = [], []
    for family in MAINTERM_FAMILIES.values():
        start = len(anchors)
        anchors.extend(family(10.0**-k) for k in range(decades + 1))
        seqs.append(list(range(start, len(anchors))))
    return anchors, seqs


def random_anchors(rng: np.random.Generator, trials: int):
    """Random ``(a, A, b, B)`` with ``a = 0, A = 1``: log-uniform length, offset across the first interval."""
    out = []
    for _ in range(trials):
        length = 10.0 ** rng.uniform(-3, 3)
        b = rng.uniform(-1.5, 1.5) * max(1.0, length)
        out.append((0.0, 1.0, b, b + length))
    return out


def verify_mainterm(alpha: float, beta: float, gamma: float, a: float = 0.0, A: float = 1.0,
                    b: float = 0.0, B: float = 1.0, q2: float | None = None, trials: int = 0,
                    seed: int = DEFAULT_SEED, decades: int = 3) -> Report:
    """Ratio of the two-interval integral to its two-term bound.

    The given anchors are evaluated, then ``trials`` random anchor sets and
    the translation- and scale-free sweep of :func:`mainterm_anchor_sweep`.
    ``q2`` defaults to the top of its window.  Sweep ratios use the cheaper
    sweep levels.  PASS when all ratios are finite, stable within 2% between
    levels and each degenerating sequence either stops growing over its last
    step or contracts geometrically toward a finite limit.  A sequence whose
    last step still grows without contracting is extended a decade at a time
    up to ``MAX_DECADES``.  Configurations where the bound is infinite hold
    trivially and are skipped.
    """
    _check_mainterm(alpha, beta, gamma, a, A, b, B)
    lo, hi = mainterm_window(alpha, beta, gamma)
    if q2 is None:
        q2 = hi
    _check_q2(alpha, beta, gamma, q2)
    rep = Report(f"two-interval bound, alpha={alpha!r}, beta={beta!r}, gamma={gamma!r}, q2={q2!r}")
    first, second = mainterm_bound(alpha, beta, gamma, a, A, b, B, q2)
    if mainterm_divergence(alpha, beta, gamma, a, A, b, B):
        # the inequality can only hold as infinity <= infinity
        rep.values.update(integral=float("inf"), first=first, second=second)
        rep.add("given anchors", not isfinite(first + second),
                f"integral diverges, bound {first + second:.4g}")
    else:
        val = mainterm_integral(alpha, beta, gamma, a, A, b, B)
        ratio = val.value / (first + second)
        rep.values.update(integral=val.value, first=first, second=second, ratio=ratio,
                          ratio_first=val.value / first)
        rep.add("given anchors", isfinite(ratio), f"integral {val.value:.6g}, ratio {ratio:.4g}")
    evaluated: dict = {}
    divergent_under_finite = 0

    def ratio(cfg):
        """``(fine, coarse)`` ratio, or None when the bound is infinite or both sides diverge."""
        nonlocal divergent_under_finite
        if cfg not in evaluated:
            f1, f2 = mainterm_bound(alpha, beta, gamma, *cfg, q2)
            total = f1 + f2
            if mainterm_divergence(alpha, beta, gamma, *cfg):
                divergent_under_finite += isfinite(total)
                evaluated[cfg] = None
            elif not isfinite(total):
                evaluated[cfg] = None  # an infinite bound holds trivially
            else:
                rough, coarse_level = qd.SWEEP_LEVELS
                evaluated[cfg] = (_mainterm(alpha, beta, gamma, *cfg, coarse_level) / total,
                                  _mainterm(alpha, beta, gamma, *cfg, rough) / total)
        return evaluated[cfg]

    fine, coarse, seqs = [], [], []
    extended = {}
    for name, family in MAINTERM_FAMILIES.items():
        seq, k = [], 0
        # extend while the last step still grows and has not started to
        # contract: near-critical exponents give a transient rise before the
        # asymptotic decay sets in
        while k <= decades or (k <= MAX_DECADES and len(seq) >= 2
                               and fine[seq[-1]] > (1 + STABILITY) * fine[seq[-2]]
                               and not (len(seq) >= 3 and isfinite(_tail_limit([fine[i] for i in seq])))):
            r = ratio(family(10.0**-k))
            k += 1
            if r is None:
                continue
            seq.append(len(fine))
            fine.append(r[0])
            coarse.append(r[1])
        if k - 1 > decades:
            extended[name] = k - 1
        if len(seq) >= 2:
            seqs.append(seq)
    for cfg in random_anchors(np.random.default_rng(seed), trials):
        r = ratio(cfg)
        if r is not None:
            fine.append(r[0])
            coarse.append(r[1])
    rep.values["extended_sequences"] = extended
    rep.values["trivial_configurations"] = sum(v is None for v in evaluated.values())
    if divergent_under_finite:
        rep.add("divergences matched", False,
                f"{divergent_under_finite} configurations diverge under a finite bound")
    ok, detail = _sweep_report(rep, "sweep", fine, coarse, seqs)
    rep.add("anchor sweep", ok, detail)
    return rep


# ---------------------------------------------------------------------------
# the one-interval envelope

def l32_integral(alpha: float, beta: float, eps: float, x: float, level: qd.Level = qd.FINE) -> float:
    """``int_0^eps u^{-alpha} (u + x)^{-beta} du``."""
    u, w = qd.rule(0.0, eps, [(0.0, -alpha)], level)
    return float(np.dot(w, u**-alpha * (u + x) ** -beta))


def l32_envelope(alpha: float, beta: float) -> tuple[float, float]:
    """Exact range of ``integral / x^{1-alpha-beta}`` for ``0 < x < 3 eps``.

    The ratio equals ``int_0^{eps/x} v^{-alpha} (1+v)^{-beta} dv``, which lies
    between its value at ``eps/x = 1/3`` and the complete Beta integral.
    """
    lower = l32_closed_form(alpha, beta, 1 / 3)
    upper = float(special.beta(1 - alpha, alpha + beta - 1))
    return lower, upper


def l32_closed_form(alpha: float, beta: float, y: float) -> float:
    """``int_0^y v^{-alpha} (1+v)^{-beta} dv`` through the Gauss hypergeometric function."""
    return float(y ** (1 - alpha) / (1 - alpha) * special.hyp2f1(beta, 1 - alpha, 2 - alpha, -y))


L32_EPSILONS = (1e-1, 1e-2, 1e-3)


def verify_lemma_l32(alpha: float, beta: float, eps: float | None = None, xs=None) -> Report:
    """Two-sided bound ``c^{-1} <= int_0^eps u^{-alpha}(u+x)^{-beta} du / x^{1-alpha-beta} <= c``.

    Runs over every ``x`` in ``xs`` (given as fractions of ``3 eps``; default
    a geometric sweep) and every ``eps`` in ``{1e-1, 1e-2, 1e-3}`` (or the
    one given).  PASS when every ratio is inside the exact envelope of
    :func:`l32_envelope` (so ``c = max(upper, 1/lower)``) and stable between
    refinement levels.
    """
    if not (0 < alpha < 1 and 0 < beta < 1 and alpha + beta > 1):
        raise PreconditionViolated("need alpha, beta in (0, 1) with alpha + beta > 1")
    fractions = np.geomspace(1e-6, 1 - 1e-9, 13) if xs is None else np.asarray(xs, dtype=float)
    if np.any(fractions <= 0) or np.any(fractions >= 1):
        raise PreconditionViolated("each x must lie in (0, 3 eps)")
    epsilons = L32_EPSILONS if eps is None else (float(eps),)
    lower, upper = l32_envelope(alpha, beta)
    rep = Report(f"one-interval envelope, alpha={alpha!r}, beta={beta!r}")
    ratios, drift = [], 0.0
    for e in epsilons:
        for frac in fractions:
            x = 3 * e * frac
            scale = x ** (1 - alpha - beta)
            fine = l32_integral(alpha, beta, e, x, qd.FINE) / scale
            coarse = l32_integral(alpha, beta, e, x, qd.COARSE) / scale
            ratios.append(fine)
            drift = max(drift, abs(fine - coarse) / fine)
    ratios = np.array(ratios)
    c = max(upper, 1 / lower)
    rep.values.update(lower=lower, upper=upper, c=c, min_ratio=float(ratios.min()),
                      max_ratio=float(ratios.max()))
    slack = 1e-8
    inside = ratios.min() >= lower * (1 - slack) and ratios.max() <= upper * (1 + slack)
    rep.add("envelope", inside,
            f"ratios in [{ratios.min():.6g}, {ratios.max():.6g}] within [{lower:.6g}, {upper:.6g}], c = {c:.4g}")
    rep.add("refinement", drift <= STABILITY, f"relative change {drift:.1e}")
    return rep


# ---------------------------------------------------------------------------
# discrete HLS inequality

def hls_cell_kernel(h0: float, cells: int) -> np.ndarray:
    """Exact ``int_{cell i} int_{cell j} |s - r|^{2 h0 - 2} ds dr`` on a uniform grid of ``[0, 1]``."""
    a = 2 * h0
    h = 1.0 / cells
    k = np.abs(np.arange(cells)[:, None] - np.arange(cells)[None, :]).astype(float)
    return h**a / (a * (a - 1)) * ((k + 1) ** a - 2 * k**a + np.abs(k - 1) ** a)


def hls_sides(h0: float, phi) -> tuple[float, float]:
    """Both sides ``(int int phi phi prod |s_i - r_i|^{2h0-2}, ||phi||_{1/h0}^2)`` for cell values ``phi``."""
    phi = np.asarray(phi, dtype=float)
    if np.any(phi < 0):
        raise InvalidInput("the test function must be nonnegative")
    if phi.ndim not in (1, 2) or (phi.ndim == 2 and phi.shape[0] != phi.shape[1]):
        raise InvalidInput("the test function must be a vector or a square array of cell values")
    cells = phi.shape[0]
    kernel = hls_cell_kernel(h0, cells)
    if phi.ndim == 1:
        lhs = float(phi @ kernel @ phi)
    else:
        lhs = float(np.sum(phi * (kernel @ phi @ kernel.T)))
    p = 1 / h0
    norm = (np.sum(phi**p) / cells**phi.ndim) ** h0
    return lhs, float(norm**2)


def _power_spike_cells(rho: float, cells: int) -> np.ndarray:
    edges = np.linspace(0.0, 1.0, cells + 1)
    prim = edges ** (1 - rho) / (1 - rho)
    return np.diff(prim) * cells


def hls_test_function(kind: str, cells: int, n: int, rng: np.random.Generator | None = None,
                      rho: float = 0.4) -> np.ndarray:
    """Nonnegative cell values of a test function on ``[0, 1]^n``.

    ``kind`` is ``one`` (constant), ``zero``, ``indicator`` (random
    box), ``spike`` (cell averages of ``u^{-rho}``, a product in two
    dimensions) or ``random`` (i.i.d. exponential values).
    """
    if n not in (1, 2):
        raise InvalidInput("the discrete HLS check supports n = 1 or 2")
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    shape = (cells,) * n
    if kind == "one":
        return np.ones(shape)
    if kind == "zero":
        return np.zeros(shape)
    if kind == "indicator":
        out = np.zeros(shape)
        lo = rng.integers(0, cells, size=n)
        hi = [rng.integers(l + 1, cells + 1) for l in lo]
        out[tuple(slice(l, h) for l, h in zip(lo, hi))] = 1.0
        return out
    if kind == "spike":
        v = _power_spike_cells(rho, cells)
        return v if n == 1 else np.multiply.outer(v, v)
    if kind == "random":
        return rng.exponential(size=shape)
    raise InvalidInput(f"unknown test function {kind!r}")


def verify_hls_discrete(h0: float, n: int, phis, cells: int | None = None) -> Report:
    """Check ``LHS <= C^n ||phi||^2`` with the sharp constant over a family of test functions.

    Both sides are exact for piecewise constant functions: the kernel is
    integrated in closed form on every pair of cells.  ``phis`` is a list of
    cell-value arrays (each of dimension ``n``) or of ``(kind, rho)`` pairs.
    """
    if not 0.5 < h0 < 1:
        raise PreconditionViolated("h0 must lie in (1/2, 1)")
    if n not in (1, 2):
        raise PreconditionViolated("n must be 1 or 2")
    ceiling = hls_sharp_constant(2 - 2 * h0) ** n
    rep = Report(f"discrete HLS, h0={h0!r}, n={n}")
    ratios = []
    for phi in phis:
        if isinstance(phi, tuple):
            kind, rho = phi
            phi = hls_test_function(kind, cells or 128, n, rho=rho)
        phi = np.asarray(phi, dtype=float)
        if phi.ndim != n:
            raise InvalidInput(f"test function of dimension {phi.ndim}, expected {n}")
        lhs, rhs = hls_sides(h0, phi)
        if rhs == 0:
            ratios.append(0.0 if lhs == 0 else float("inf"))
        else:
            ratios.append(lhs / rhs)
    worst = max(ratios) if ratios else 0.0
    rep.values.update(ratios=ratios, ceiling=ceiling, max_ratio=worst)
    rep.add("one constant", worst <= ceiling * (1 + 1e-12),
            f"max LHS/RHS {worst:.6g} <= sharp constant {ceiling:.6g}")
    return rep


# ---------------------------------------------------------------------------
# seeded sweeps over random admissible parameters

@dataclass(frozen=True)
class SweepResult:
    """Outcome of one verification routine over many random parameter draws."""
    name: str
    reports: list
    draws: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failures(self) -> list:
        return [(d, r) for d, r in zip(self.draws, self.reports) if not r.passed]

    def summary(self) -> str:
        bad = len(self.failures)
        return f"{self.name}: {len(self.reports) - bad}/{len(self.reports)} draws pass"


EXPONENT_CAP = 0.95


def draw_mainterm(rng: np.random.Generator):
    """Exponents with ``gamma < 2 - beta - max(alpha, beta)`` and a nonempty window, plus ``q2``."""
    while True:
        alpha, beta, gamma = rng.uniform(0, EXPONENT_CAP, size=3)
        if not gamma < 2 - beta - max(alpha, beta):
            continue
        lo, hi = mainterm_window(alpha, beta, gamma)
        if hi > lo:
            return float(alpha), float(beta), float(gamma), float(lo + (hi - lo) * rng.uniform(0.1, 1.0))


def sweep_mainterm(trials: int = 50, seed: int = DEFAULT_SEED, decades: int = 3) -> SweepResult:
    rng = np.random.default_rng(seed)
    draws, reports = [], []
    for _ in range(trials):
        alpha, beta, gamma, q2 = draw_mainterm(rng)
        draws.append(dict(alpha=alpha, beta=beta, gamma=gamma, q2=q2))
        reports.append(verify_mainterm(alpha, beta, gamma, q2=q2, decades=decades))
    return SweepResult("two-interval bound", reports, draws)


def draw_frakB(rng: np.random.Generator):
    """Kernel choice, exponents in ``(0, 0.95)`` and ``q`` inside ``[0, q_max]``."""
    which = "B1" if rng.random() < 0.5 else "B2"
    alpha, beta, gamma = (float(v) for v in rng.uniform(0.05, EXPONENT_CAP, size=3))
    q = float(frakB_q_max(which, alpha, beta, gamma) * rng.uniform(0.1, 0.9))
    return which, alpha, beta, gamma, q


def sweep_frakB(trials: int = 50, seed: int = DEFAULT_SEED) -> SweepResult:
    rng = np.random.default_rng(seed)
    draws, reports = [], []
    for _ in range(trials):
        which, alpha, beta, gamma, q = draw_frakB(rng)
        draws.append(dict(which=which, alpha=alpha, beta=beta, gamma=gamma, q=q))
        reports.append(verify_frakB(which, alpha, beta, gamma, q))
    return SweepResult("three-point kernels", reports, draws)


def sweep_l32(trials: int = 50, seed: int = DEFAULT_SEED) -> SweepResult:
    rng = np.random.default_rng(seed)
    draws, reports = [], []
    for _ in range(trials):
        while True:
            alpha, beta = (float(v) for v in rng.uniform(0.0, 1.0, size=2))
            if alpha + beta > 1 and 0 < alpha and 0 < beta:
                break
        draws.append(dict(alpha=alpha, beta=beta))
        reports.append(verify_lemma_l32(alpha, beta))
    return SweepResult("one-interval envelope", reports, draws)


HLS_KINDS = ("one", "indicator", "spike", "random", "zero")


def sweep_hls(trials: int = 50, seed: int = DEFAULT_SEED, cells: int = 96) -> SweepResult:
    rng = np.random.default_rng(seed)
    draws, reports = [], []
    for _ in range(trials):
        h0 = float(rng.uniform(0.5, 1.0))
        while h0 <= 0.5:
            h0 = float(rng.uniform(0.5, 1.0))
        n = int(rng.integers(1, 3))
        rho = float(rng.uniform(0, h0))
        phis = [hls_test_function(kind, cells, n, rng, rho) for kind in HLS_KINDS]
        draws.append(dict(h0=h0, n=n, rho=rho))
        reports.append(verify_hls_discrete(h0, n, phis))
    return SweepResult("discrete HLS", reports, draws)
