"""Solvability regions in the Hurst-parameter plane.

Every condition here is a strict inequality between rational functions of
the Hurst parameters, evaluated in exact arithmetic; a point on a boundary
fails the condition.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import EmptyGrid, InvalidInput, OutOfRange, WrongRegime
from .params import HurstProfile, exact, make_profile

HALF = Fraction(1, 2)
QUARTER3 = Fraction(3, 4)

# Order in which failed chaos conditions are reported.
CHAOS_CONDITIONS = ("rough_spatial", "first_chaos", "rough_temporal", "combined")


@dataclass(frozen=True)
class ChaosVerdict:
    """Finiteness of every chaos, with the margin ``lhs - rhs`` of each condition."""

    finite: bool
    margins: dict = field(compare=False)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(name for name, m in self.margins.items() if m <= 0)

    @property
    def label(self) -> str:
        return "Finite" if self.finite else "Infinite"

    @property
    def witness(self) -> str:
        return ";".join(self.failed) if not self.finite else "all"


def chaos_margins(profile: HurstProfile) -> dict:
    d, ds = profile.d, profile.d_star
    h0, hs, ht = profile.h0_exact, profile.h_star_exact, profile.h_total_exact
    # integer numerators over one common denominator keep grid scans fast
    den = 4 * lcm(h0.denominator, hs.denominator, ht.denominator)
    n0 = h0.numerator * (den // h0.denominator)
    ns = hs.numerator * (den // hs.denominator)
    nt = ht.numerator * (den // ht.denominator)
    q = den // 4
    return {
        "rough_spatial": Fraction(ns - 3 * ds * q + den, den),
        "first_chaos": Fraction(nt + 2 * n0 - d * den, den),
        "rough_temporal": Fraction(ns + 2 * n0 - 3 * ds * q - 2 * q, den),
        "combined": Fraction(nt + 2 * ns + 4 * n0 - d * den - 6 * ds * q, den),
    }


def classify_chaos(profile: HurstProfile) -> ChaosVerdict:
    """Decide whether every chaos of the solution has finite second moment."""
    margins = chaos_margins(profile)
    return ChaosVerdict(all(m > 0 for m in margins.values()), margins)


def classify_chaos_white_time(profile: HurstProfile) -> ChaosVerdict:
    """Solvability test for noise that is white in time (``h0 = 1/2``).

    In this regime each chaos being finite is equivalent to convergence of
    the whole chaos expansion.
    """
    if profile.h0_exact != HALF:
        raise WrongRegime("the white-time test needs h0 = 1/2")
    margins = {
        "spatial_total": profile.h_total_exact - (profile.d - 1),
        "rough_white": profile.h_star_exact - (QUARTER3 * profile.d_star - HALF),
    }
    return ChaosVerdict(all(m > 0 for m in margins.values()), margins)


def necessary_margin(profile: HurstProfile) -> Fraction:
    """Margin of the necessary condition for solvability."""
    lhs = profile.h_total_exact + 2 * profile.h0_exact
    if profile.d == 1:
        return lhs - Fraction(5, 4)
    return lhs - Fraction(3 * profile.d + 2, 4)


def region_a1(h0: Fraction, h: Fraction) -> bool:
    return HALF < h0 < 1 and Fraction(1, 20) < h < Fraction(1, 4) and 2 * h0 + h > Fraction(5, 4)


def region_a2(h0: Fraction, h: Fraction) -> bool:
    return HALF < h0 < 1 and 0 < h < Fraction(1, 20) and 4 * h0 + 12 * h > 3


class SeriesStatus(enum.Enum):
    ConvergentHLS = "ConvergentHLS"
    ConvergentWhiteTime = "ConvergentWhiteTime"
    ConvergentA1A2 = "ConvergentA1A2"
    DivergentNecessity = "DivergentNecessity"
    Unknown = "Unknown"


@dataclass(frozen=True)
class SeriesVerdict:
    status: SeriesStatus
    witness: str | None = None

    @property
    def label(self) -> str:
        return self.status.value

    @property
    def convergent(self) -> bool:
        return self.status.name.startswith("Convergent")


def classify_series(profile: HurstProfile) -> SeriesVerdict:
    """Decide convergence of the chaos expansion where a criterion applies.

    Criteria are tried in a fixed order: a violated necessary condition,
    then the white-time criterion, then the Hardy-Littlewood-Sobolev
    criterion, then the interpolation regions (one spatial dimension).
    """
    chaos = classify_chaos(profile)
    if not chaos.finite:
        return SeriesVerdict(SeriesStatus.DivergentNecessity, chaos.witness)
    if necessary_margin(profile) <= 0:
        return SeriesVerdict(SeriesStatus.DivergentNecessity, "necessary")
    if profile.h0_exact == HALF and classify_chaos_white_time(profile).finite:
        return SeriesVerdict(SeriesStatus.ConvergentWhiteTime, "white_time")
    if (
        profile.h0_exact + profile.h_star_exact > QUARTER3 * profile.d_star
        and profile.h_total_exact > profile.d - 1
    ):
        return SeriesVerdict(SeriesStatus.ConvergentHLS, "hls")
    if profile.d == 1:
        h0, h = profile.h0_exact, profile.h_exact[0]
        if region_a1(h0, h):
            return SeriesVerdict(SeriesStatus.ConvergentA1A2, "region_A1")
        if region_a2(h0, h):
            return SeriesVerdict(SeriesStatus.ConvergentA1A2, "region_A2")
    return SeriesVerdict(SeriesStatus.Unknown, None)


# ---------------------------------------------------------------------------
# interpolation parameters in the region where neither criterion applies

INTERPOLATION_EPS = 1e-6


@dataclass(frozen=True)
class InterpolationParams:
    """Exponents that make the interpolated bound summable."""

    q: float
    p: float
    k: float
    k_prime: float
    m: float
    m_prime: float
    k_prime_interval: tuple[float, float]


def in_region_s(h0: Fraction, h: Fraction) -> bool:
    return h + 2 * h0 > Fraction(5, 4) and h + h0 <= QUARTER3 and 12 * h + 4 * h0 > 3


def constraint_lines(ip: InterpolationParams, h0: float, h: float) -> tuple[bool, bool, bool]:
    """Check the three chains of strict inequalities the parameters must satisfy."""
    a = 1 - 2 * h
    first = 1 < ip.q < 3 / (ip.k_prime * a + 2)
    mid = 3 / (2 * ip.k_prime * a + 4 * ip.m_prime * (1 - h0))
    second = 1 < ip.q < mid < 1 / (2 * ip.m_prime * (1 - h0))
    upper = 5 / (2 * ip.k * a + 8 * ip.m * (1 - h0))
    third = 1 < ip.p < upper < 1 / (2 * ip.m * (1 - h0))
    return first, second, third


def find_interpolation_params(profile: HurstProfile) -> InterpolationParams | None:
    """Construct interpolation exponents for ``d = 1`` in the middle region.

    Returns ``None`` when the point is outside the region where the
    construction applies, or the admissible interval for ``k'`` is empty.
    Raises :class:`WrongRegime` unless ``d = 1``, ``1/2 < h0 < 3/4`` and
    ``0 < h < 1/4``.
    """
    if profile.d != 1:
        raise WrongRegime("interpolation parameters are built for d = 1 only")
    h0q, hq = profile.h0_exact, profile.h_exact[0]
    if not (HALF < h0q < QUARTER3 and 0 < hq < Fraction(1, 4)):
        raise WrongRegime("interpolation needs 1/2 < h0 < 3/4 and 0 < h < 1/4")
    if not in_region_s(h0q, hq):
        return None
    a = 1 - 2 * hq
    lower = max(Fraction(2, 5) / a, (4 * h0q - 2) / a)
    upper = (12 * (hq + 2 * h0q) - 13) / (5 * a)
    if not lower < upper:
        return None
    h0, h = float(h0q), float(hq)
    kp = float((lower + upper) / 2)
    q = 3 / (kp * (1 - 2 * h) + 2) - INTERPOLATION_EPS
    mp = (2 - kp * (1 - 2 * h)) / (4 * (1 - h0))
    ip = InterpolationParams(
        q=q,
        p=q / (q - 1),
        k=1 - kp,
        k_prime=kp,
        m=1 - mp,
        m_prime=mp,
        k_prime_interval=(float(lower), float(upper)),
    )
    if not all(constraint_lines(ip, h0, h)):
        return None
    return ip


# ---------------------------------------------------------------------------
# grid scans

@dataclass(frozen=True)
class ScanRow:
    h0: float
    h: float
    verdict: str
    witness: str


def axis_nodes(lo, hi, step, include_hi: bool = False) -> list[float]:
    """Nodes ``lo, lo + step, ...`` below ``hi`` (or up to it with ``include_hi``).

    Arithmetic is done on the decimal values so that ``0.5 + 3 * 0.01``
    prints as ``0.53``.
    """
    lo, hi, step = exact(lo), exact(hi), exact(step)
    if step <= 0:
        raise InvalidInput("grid step must be positive")
    nodes = []
    x = lo
    while x < hi or (include_hi and x == hi):
        nodes.append(float(x))
        x = lo + len(nodes) * step
    return nodes


def parse_axis(text: str) -> list[float]:
    """Read ``lo:hi:step`` (``lo`` included, ``hi`` excluded)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidInput(f"axis {text!r} is not of the form lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise InvalidInput(f"axis {text!r} has a non-numeric field") from exc
    return axis_nodes(lo, hi, step)


def _classify_node(h0: float, h: float, classifier: str) -> ScanRow:
    try:
        profile = make_profile(h0, [h])
    except OutOfRange:
        return ScanRow(h0, h, "OutOfRange", "domain")
    if classifier == "chaos":
        v = classify_chaos(profile)
        return ScanRow(h0, h, v.label, v.witness)
    v = classify_series(profile)
    return ScanRow(h0, h, v.label, v.witness or "none")


def region_scan(
    h0_nodes: Sequence[float], h_nodes: Sequence[float], classifier: str = "series"
) -> list[ScanRow]:
    """Classify every node of the grid ``h0_nodes x h_nodes`` (one spatial dimension).

    Rows come out ordered by ``h0`` first and ``h`` second, the order of the
    supplied node lists.  Nodes outside the parameter domain get the verdict
    ``OutOfRange`` instead of aborting the scan.
    """
    if classifier not in ("chaos", "series"):
        raise InvalidInput(f"unknown classifier {classifier!r}")
    if len(h0_nodes) == 0 or len(h_nodes) == 0:
        raise EmptyGrid("the scan grid has no nodes")
    return [_classify_node(a, b, classifier) for a in h0_nodes for b in h_nodes]


def rows_to_csv(rows: Iterable[ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["h0", "h", "verdict", "witness"])
    for r in rows:
        writer.writerow([repr(r.h0), repr(r.h), r.verdict, r.witness])
    return buf.getvalue()


VERDICT_COLORS = {
    "Finite": "#3b7dd8",
    "Infinite": "#d9d9d9",
    "ConvergentHLS": "#2c7fb8",
    "ConvergentWhiteTime": "#41b6c4",
    "ConvergentA1A2": "#f2c14e",
    "DivergentNecessity": "#d9d9d9",
    "Unknown": "#fdf1c7",
    "OutOfRange": "#ffffff",
}


def rows_to_svg(rows: Sequence[ScanRow], width: int = 480, height: int = 480) -> str:
    """Render scan rows as an SVG map with ``h0`` across and ``h`` upward."""
    if not rows:
        raise EmptyGrid("nothing to draw")
    xs = sorted({r.h0 for r in rows})
    ys = sorted({r.h for r in rows})
    pad = 40
    cw = (width - 2 * pad) / len(xs)
    ch = (height - 2 * pad) / len(ys)
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for r in rows:
        x = pad + xi[r.h0] * cw
        y = height - pad - (yi[r.h] + 1) * ch
        color = VERDICT_COLORS.get(r.verdict, "#999999")
        out.append(
            f'<rect x="{x:.3f}" y="{y:.3f}" width="{cw:.3f}" height="{ch:.3f}" '
            f'fill="{color}"><title>h0={r.h0!r} h={r.h!r} {r.verdict}</title></rect>'
        )
    out.append(
        f'<text x="{width / 2:.1f}" y="{height - 8}" text-anchor="middle" '
        f'font-size="14">h0 from {xs[0]!r} to {xs[-1]!r}</text>'
    )
    out.append(
        f'<text x="14" y="{height / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 14 {height / 2:.1f})">h from {ys[0]!r} to {ys[-1]!r}</text>'
    )
    legend = sorted({r.verdict for r in rows})
    for i, name in enumerate(legend):
        out.append(
            f'<rect x="{pad + i * 110}" y="8" width="12" height="12" '
            f'fill="{VERDICT_COLORS.get(name, "#999999")}" stroke="black" stroke-width="0.5"/>'
        )
        out.append(f'<text x="{pad + i * 110 + 16}" y="18" font-size="10">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
