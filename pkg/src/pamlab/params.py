"""Hurst profiles of the noise and their aggregate quantities.

A profile holds the temporal Hurst parameter ``h0`` and the spatial
parameters ``h``.  Spatial parameters below 3/4 are the *rough* ones; the
ones at or above 3/4 are *regular*.  The stored order puts every rough
parameter first, so aggregate quantities never depend on input order.

Decisions that depend on strict inequalities between Hurst parameters are
made in exact rational arithmetic (see :func:`exact`), so that points typed
on a boundary are classified as on the boundary.
"""
from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable

from .errors import EmptyDimension, InvalidInput, OutOfRange

ROUGH_LIMIT = Fraction(3, 4)


@lru_cache(maxsize=65536)
def _exact_cached(x: float) -> Fraction:
    return Fraction(repr(x))


def exact(x) -> Fraction:
    """Rational value of the shortest decimal that prints as ``x``.

    ``exact(0.1) == Fraction(1, 10)``, unlike ``Fraction(0.1)``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput(f"non-finite value {x!r}")
    return _exact_cached(x)


@dataclass(frozen=True)
class HurstProfile:
    """Temporal and spatial Hurst parameters, rough spatial ones first.

    Build instances with :func:`make_profile`, which validates the ranges.
    """

    h0: float
    h: tuple[float, ...]

    @property
    def d(self) -> int:
        return len(self.h)

    @cached_property
    def h0_exact(self) -> Fraction:
        return exact(self.h0)

    @cached_property
    def h_exact(self) -> tuple[Fraction, ...]:
        return tuple(exact(x) for x in self.h)

    @cached_property
    def d_star(self) -> int:
        """Number of rough spatial parameters (below 3/4)."""
        return sum(1 for x in self.h_exact if x < ROUGH_LIMIT)

    @property
    def d_upper(self) -> int:
        return self.d - self.d_star

    @cached_property
    def h_star_exact(self) -> Fraction:
        return sum((x for x in self.h_exact if x < ROUGH_LIMIT), Fraction(0))

    @cached_property
    def h_upper_exact(self) -> Fraction:
        return sum((x for x in self.h_exact if x >= ROUGH_LIMIT), Fraction(0))

    @cached_property
    def h_total_exact(self) -> Fraction:
        return sum(self.h_exact, Fraction(0))

    @cached_property
    def beta_star_exact(self) -> Fraction:
        """Sum of ``4 h_k - 3`` over the regular spatial parameters."""
        return sum((4 * x - 3 for x in self.h_exact if x >= ROUGH_LIMIT), Fraction(0))

    @property
    def h_star(self) -> float:
        return float(self.h_star_exact)

    @property
    def h_upper(self) -> float:
        return float(self.h_upper_exact)

    @property
    def h_total(self) -> float:
        return float(self.h_total_exact)

    @property
    def beta_star(self) -> float:
        return float(self.beta_star_exact)

    @property
    def rough(self) -> tuple[float, ...]:
        return self.h[: self.d_star]

    @property
    def regular(self) -> tuple[float, ...]:
        return self.h[self.d_star:]

    @property
    def gamma(self) -> float:
        """Exponent ``2 - 2 h0`` of the temporal covariance kernel."""
        return float(2 - 2 * self.h0_exact)


def make_profile(h0, h: Iterable) -> HurstProfile:
    """Validate and normalise a Hurst profile.

    Parameters
    ----------
    h0 : float
        Temporal Hurst parameter in ``[1/2, 1]``.
    h : iterable of float
        Spatial Hurst parameters, each in ``(0, 1)``.

    Raises
    ------
    OutOfRange
        If a parameter lies outside its interval.
    EmptyDimension
        If ``h`` is empty.
    """
    h = tuple(float(x) for x in h)
    if not h:
        raise EmptyDimension("the spatial profile must have at least one entry")
    q0 = exact(h0)
    if not Fraction(1, 2) <= q0 <= 1:
        raise OutOfRange(f"h0 = {float(h0)!r} is outside [1/2, 1]")
    for x in h:
        if not 0 < exact(x) < 1:
            raise OutOfRange(f"spatial parameter {x!r} is outside (0, 1)")
    ordered = tuple(sorted(h, key=lambda x: (exact(x) >= ROUGH_LIMIT, exact(x))))
    return HurstProfile(float(h0), ordered)


_LINE = re.compile(r"^\s*(h0|h)\s*=\s*(.+?)\s*$")


def parse_profile(text: str) -> HurstProfile:
    """Parse the two-line profile format ``h0 = <real>`` / ``h = [<real>, ...]``.

    Blank lines and ``#`` comments are ignored.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise InvalidInput(f"line {lineno}: expected 'h0 = ...' or 'h = [...]'")
        key, value = m.groups()
        if key in fields:
            raise InvalidInput(f"line {lineno}: duplicate key {key!r}")
        try:
            fields[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError) as exc:
            raise InvalidInput(f"line {lineno}: cannot read {value!r}") from exc
    if set(fields) != {"h0", "h"}:
        raise InvalidInput("a profile needs both 'h0' and 'h'")
    h0, h = fields["h0"], fields["h"]
    if isinstance(h, (int, float)):
        h = [h]
    if not isinstance(h0, (int, float)) or isinstance(h0, bool):
        raise InvalidInput("h0 must be a real number")
    if not isinstance(h, (list, tuple)) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in h
    ):
        raise InvalidInput("h must be a list of real numbers")
    return make_profile(h0, h)


def read_profile(path) -> HurstProfile:
    return parse_profile(Path(path).read_text())


def format_profile(profile: HurstProfile) -> str:
    inner = ", ".join(repr(x) for x in profile.h)
    return f"h0 = {profile.h0!r}\nh = [{inner}]\n"
