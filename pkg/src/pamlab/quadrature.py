"""Composite Gauss rules for integrands with algebraic point singularities.

Every interval is split at the singular points it contains.  Each piece is
graded geometrically toward its singular ends, with Gauss-Legendre on the
graded cells.  The innermost cell uses Gauss-Jacobi with the singular
exponent when it is known, so ``(y - c)^e * smooth`` is integrated
accurately for any ``e > -1``.  A rule is a pair of arrays ``(nodes,
weights)`` and applies to any integrand.

The grading depth adapts to the integrand.  Strong singularities get deeper
grading so that the innermost cell, where the local behaviour is only
approximated, carries at most a fixed fraction of the mass.  An end whose
nearest other singular point is close is graded further, down past that
distance.  Grading stops where float spacing near the singular point would
make node positions meaningless.  Node positions near a singular end are
rounded when shifted away from the origin; each graded weight is rescaled by
the ratio of intended to realized distance raised to the exponent, which
cancels that rounding in the singular factor exactly.

Two refinement levels are provided; comparing them is the convergence check
used throughout the package.  Sweeps over many configurations, which only need
percent accuracy, compare a cheaper pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, log
from typing import Iterable, Sequence

import numpy as np
from scipy.special import roots_jacobi

GRADING_RATIO = 0.15
_LOG_RATIO = log(GRADING_RATIO)


MAX_DEPTH = 400
RESOLUTION = 1e-12     # smallest cell relative to the magnitude of its singular end
SMALLEST_CELL = 1e-100


@dataclass(frozen=True)
class Level:
    order: int
    depth: int
    tail: float        # mass fraction allowed in the innermost cell


ROUGH = Level(order=6, depth=6, tail=1e-4)
COARSE = Level(order=8, depth=8, tail=1e-6)
FINE = Level(order=12, depth=11, tail=1e-10)
LEVELS = (COARSE, FINE)
SWEEP_LEVELS = (ROUGH, COARSE)   # cheaper pair for many-configuration ratio sweeps


@lru_cache(maxsize=None)
def _legendre_unit(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1) / 2, w / 2


def grading_depth(exponent: float, level: Level, gap: float = 1.0, floor: float = 0.0) -> int:
    """Number of graded cells toward a singular end.

    ``gap`` is the distance to the nearest other singular point relative to
    the piece length and ``floor`` the smallest useful relative cell size.
    """
    depth = max(level.depth, ceil(log(level.tail) / ((1 + exponent) * _LOG_RATIO)))
    if gap < 1:
        depth += ceil(log(gap) / _LOG_RATIO)
    if floor >= GRADING_RATIO:
        return 1
    if floor > 0:
        depth = min(depth, int(log(floor) / _LOG_RATIO))
    return min(max(depth, 1), MAX_DEPTH)


@lru_cache(maxsize=None)
def graded_unit(exponent: float, level: Level, depth: int | None = None):
    """Rule on ``(0, 1)`` for ``t^exponent * smooth``, graded toward ``t = 0``."""
    if not exponent > -1:
        raise ValueError("singular exponent must exceed -1")
    depth = level.depth if depth is None else depth
    x, w = _legendre_unit(level.order)
    nodes, weights = [], []
    hi = 1.0
    for _ in range(depth):
        lo = hi * GRADING_RATIO
        nodes.append(lo + (hi - lo) * x)
        weights.append((hi - lo) * w)
        hi = lo
    if exponent != 0:
        xj, wj = roots_jacobi(level.order, 0.0, exponent)
        t = (xj + 1) / 2 * hi
        nodes.append(t)
        weights.append(wj * (hi / 2) ** (1 + exponent) / t**exponent)
    else:
        nodes.append(hi * x)
        weights.append(hi * w)
    nodes = np.concatenate(nodes[::-1])
    weights = np.concatenate(weights[::-1])
    return nodes, weights


def _smooth_rule(a: float, b: float, level: Level):
    x, w = _legendre_unit(level.order)
    return a + (b - a) * x, (b - a) * w


def _end_depth(end: float, exponent: float, length: float, gap: float, level: Level) -> int:
    floor = max(RESOLUTION * abs(end), SMALLEST_CELL) / length
    return grading_depth(exponent, level, gap / length, floor)


def piece_rule(a: float, b: float, left: float | None, right: float | None, level: Level,
               left_gap: float = np.inf, right_gap: float = np.inf):
    """Rule on ``[a, b]`` graded toward each end given an exponent (``None``: smooth end).

    ``left_gap`` and ``right_gap`` are distances from each end to the nearest
    singular point outside the piece.
    """
    if left is None and right is None:
        return _smooth_rule(a, b, level)
    if left is not None and right is not None:
        mid = 0.5 * (a + b)
        if not a < mid < b:
            # too short to split in floating point; carries no mass
            return np.empty(0), np.empty(0)
        x1, w1 = piece_rule(a, mid, left, None, level, left_gap=left_gap)
        x2, w2 = piece_rule(mid, b, None, right, level, right_gap=right_gap)
        return np.concatenate([x1, x2]), np.concatenate([w1, w2])
    length = b - a
    if left is not None:
        depth = _end_depth(a, float(left), length, left_gap, level)
        t, w = graded_unit(float(left), level, depth)
        x = a + length * t
        return x, _realized(a, length * w, length * t, x - a, float(left))
    depth = _end_depth(b, float(right), length, right_gap, level)
    t, w = graded_unit(float(right), level, depth)
    x = b - length * t[::-1]
    return x, _realized(b, length * w[::-1], length * t[::-1], b - x, float(right))


def _realized(end, weights, intended, realized, exponent):
    """Correct weights for the rounding of node distances to the singular end."""
    if exponent == 0 or end == 0:
        return weights
    return weights * (intended / realized) ** exponent


def rule(
    a: float,
    b: float,
    singular: Iterable[tuple[float, float]] = (),
    level: Level = FINE,
    max_cell: float | None = None,
):
    """Nodes and weights for ``int_a^b f`` with singularities at given points.

    Parameters
    ----------
    singular : iterable of (location, exponent)
        Points where ``f`` behaves like ``|y - location|^exponent`` (use
        exponent 0 for a kink or an unknown but mild singularity).  Points
        outside ``[a, b]`` are ignored.
    max_cell : float, optional
        Longest smooth cell; long stretches are cut into equal cells.
    """
    if not b > a:
        return np.empty(0), np.empty(0)
    span = b - a
    exps: dict[float, float] = {}
    outside: list[float] = []
    for loc, e in singular:
        if not np.isfinite(loc):
            continue
        if a - 1e-15 * span <= loc <= b + 1e-15 * span:
            end = min(max(loc, a), b)
            if abs(end - a) <= 1e-15 * span:
                end = a
            elif abs(end - b) <= 1e-15 * span:
                end = b
            # snap onto an end only when the combined singularity stays integrable
            if end != loc and exps.get(end, 0.0) + float(e) <= -1:
                if a < loc < b:
                    exps[loc] = exps.get(loc, 0.0) + float(e)
                else:
                    outside.append(float(loc))
                continue
            exps[end] = exps.get(end, 0.0) + float(e)
        else:
            outside.append(float(loc))
    # an end close to a singular point outside the interval is graded as well
    for end in (a, b):
        if end not in exps and any(abs(p - end) < span for p in outside):
            exps[end] = 0.0
    cuts = sorted({a, b, *exps})
    # distance from each cut point to its nearest other singular point
    points = sorted(set(exps) | set(outside))
    gaps = {}
    for c in cuts:
        others = [abs(p - c) for p in points if p != c]
        gaps[c] = min(others) if others else np.inf
    xs, ws = [], []
    for u, v in zip(cuts[:-1], cuts[1:]):
        if v <= u:
            continue
        pieces = 1 if max_cell is None else max(1, ceil((v - u) / max_cell))
        if pieces == 1:
            edges = (u, v)
        else:
            edges = np.linspace(u, v, pieces + 1)
            edges[0], edges[-1] = u, v
        for k in range(pieces):
            left = exps.get(u) if k == 0 else None
            right = exps.get(v) if k == pieces - 1 else None
            x, w = piece_rule(edges[k], edges[k + 1], left, right, level,
                              left_gap=gaps[u], right_gap=gaps[v])
            xs.append(x)
            ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def integrate(f, a: float, b: float, singular: Sequence[tuple[float, float]] = (), level: Level = FINE,
              max_cell: float | None = None) -> float:
    x, w = rule(a, b, singular, level, max_cell)
    return float(np.dot(w, f(x)))


def two_levels(compute) -> tuple[float, float]:
    """Run ``compute(level)`` on both levels; return ``(fine value, |fine - coarse|)``."""
    coarse = compute(COARSE)
    fine = compute(FINE)
    return fine, abs(fine - coarse)


def _graded_block(ends, lengths, exponent, gaps, level, toward_right=False):
    """Blocks ``(rows, nodes, weights)`` for many pieces graded toward ``ends``.

    Pieces run from each end over ``lengths`` to the right, or to the left
    when ``toward_right`` (the singular end is then the right end).  Rows are
    grouped by grading depth so each block is rectangular.
    """
    depths = np.array([_end_depth(e, exponent, ln, g, level) for e, ln, g in zip(ends, lengths, gaps)])
    for depth in np.unique(depths):
        rows = np.flatnonzero(depths == depth)
        t, w = graded_unit(exponent, level, int(depth))
        end, ln = ends[rows, None], lengths[rows, None]
        x = end - ln * t if toward_right else end + ln * t
        weights = ln * w
        if exponent != 0:
            with np.errstate(divide="ignore"):
                weights = weights * ((ln * t) / np.abs(x - end)) ** exponent
        yield rows, x, weights


def moving_point_integrals(length: float, origin_exponent: float, points, point_exponent: float,
                           f, level: Level = FINE) -> np.ndarray:
    """``int_0^length f(x, i) dx`` for each ``i`` with singular points at 0 and ``points[i]``.

    Produces the same nodes and weights as :func:`rule` with singular list
    ``[(0, origin_exponent), (points[i], point_exponent)]``, built for all
    points at once.  ``f(x, rows)`` receives a 2-d node array whose row ``k``
    belongs to point ``rows[k]``.
    """
    r = np.asarray(points, dtype=float)
    out = np.zeros(r.size)
    near = (np.abs(r) <= 1e-9 * length) | (np.abs(r - length) <= 1e-9 * length) | ~np.isfinite(r)
    blocks = []
    # moving point inside: [0, r/2] toward 0, [r/2, r] toward r, [r, length] toward r
    inside = ~near & (r > 0) & (r < length)
    i = np.flatnonzero(inside)
    if i.size:
        ri = r[i]
        blocks.append((i, _graded_block(np.zeros(i.size), ri / 2, origin_exponent, ri, level)))
        blocks.append((i, _graded_block(ri, ri - ri / 2, point_exponent, ri, level, toward_right=True)))
        blocks.append((i, _graded_block(ri, length - ri, point_exponent, ri, level)))
    # moving point just beyond the right end: that end is graded as a kink
    beyond = ~near & (r > length) & (r - length < length)
    i = np.flatnonzero(beyond)
    if i.size:
        ri, half = r[i], np.full(i.size, length / 2)
        blocks.append((i, _graded_block(np.zeros(i.size), half, origin_exponent,
                                        np.minimum(length, ri), level)))
        blocks.append((i, _graded_block(np.full(i.size, length), length - half, 0.0,
                                        ri - length, level, toward_right=True)))
    far = ~near & ~inside & ~beyond
    i = np.flatnonzero(far)
    if i.size:
        blocks.append((i, _graded_block(np.zeros(i.size), np.full(i.size, length), origin_exponent,
                                        np.abs(r[i]), level)))
    for rows_of, gen in blocks:
        for sub, x, w in gen:
            rows = rows_of[sub]
            out += np.bincount(rows, weights=np.sum(w * f(x, rows), axis=1), minlength=r.size)
    for k in np.flatnonzero(near):
        x, w = rule(0.0, length, [(0.0, origin_exponent), (r[k], point_exponent)], level)
        out[k] = float(np.dot(w, f(x[None, :], np.array([k]))[0]))
    return out
