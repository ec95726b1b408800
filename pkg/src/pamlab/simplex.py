"""Ordered time simplices, gap variables and the exponent alphabet.

Time points ``0 < s_1 < ... < s_n < t`` are described by their gaps
``w_i = s_{i+1} - s_i`` (with ``s_{n+1} = t``) and by the mixing weights
``lambda_i = sqrt(w_{i-1} / (w_{i-1} + w_i))``, ``lambda_1 = 1``.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import DegenerateGap, InvalidInput, WrongRegime
from .params import HurstProfile


def gaps(s, t: float) -> np.ndarray:
    """Gaps ``w_1, ..., w_n`` of the ordered times ``s`` inside ``(0, t)``."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise InvalidInput("time points must be a non-empty vector")
    w = np.diff(np.append(s, t))
    if np.any(w <= 0) or s[0] < 0:
        raise DegenerateGap("time points must satisfy 0 <= s_1 < ... < s_n < t")
    return w


def mixing_weights(w) -> np.ndarray:
    """``lambda_1 = 1`` and ``lambda_i = sqrt(w_{i-1} / (w_{i-1} + w_i))``."""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise DegenerateGap("gaps must be positive")
    lam = np.ones_like(w)
    lam[1:] = np.sqrt(w[:-1] / (w[:-1] + w[1:]))
    return lam


def alphabet_constant_exact(profile: HurstProfile) -> Fraction:
    """``d/2 - |H| + beta*/2``, the spacing of the exponent alphabet."""
    return Fraction(profile.d, 2) - profile.h_total_exact + profile.beta_star_exact / 2


def alphabet_constant(profile: HurstProfile) -> float:
    return float(alphabet_constant_exact(profile))


class Case(enum.Enum):
    CaseI = "CaseI"
    CaseII = "CaseII"


def case_split(profile: HurstProfile) -> Case:
    """Case I when the alphabet constant is positive, Case II otherwise."""
    return Case.CaseI if alphabet_constant_exact(profile) > 0 else Case.CaseII


def alpha_multipliers(n: int) -> list[tuple[int, ...]]:
    """Words over ``{0, 1, 2}`` of length ``n`` summing to ``n - 1``.

    No two adjacent letters are both 0, and no two adjacent letters are both
    2.  Words come out in lexicographic order.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    out: list[tuple[int, ...]] = []
    word: list[int] = []

    def extend(remaining: int) -> None:
        pos = len(word)
        if pos == n:
            if remaining == 0:
                out.append(tuple(word))
            return
        for letter in (0, 1, 2):
            if letter > remaining:
                break
            if pos and letter != 1 and word[-1] == letter:
                continue
            # the letters still to place can add at most 2 each
            if remaining - letter > 2 * (n - pos - 1):
                continue
            word.append(letter)
            extend(remaining - letter)
            word.pop()

    extend(n - 1)
    return out


def enumerate_alpha(profile: HurstProfile, n: int) -> list[tuple[float, ...]]:
    """All admissible exponent vectors of length ``n`` in Case I.

    Entries are ``0``, ``A`` or ``2A`` with ``A`` the alphabet constant.
    """
    a = alphabet_constant_exact(profile)
    if a <= 0:
        raise WrongRegime("the exponent alphabet is only defined when it is positive")
    af = float(a)
    return [tuple(k * af for k in word) for word in alpha_multipliers(n)]


def rho_exponents(profile: HurstProfile, alpha) -> tuple[float, ...]:
    """Singular exponents of the time-gap factors for one alphabet vector."""
    alpha = list(alpha)
    d, ht, bs = profile.d, profile.h_total, profile.beta_star
    inner = 1.5 * d + bs / 2 - 2 * ht
    rho = [0.5 * (inner - a) for a in alpha[:-1]]
    rho.append(0.5 * (d - ht - alpha[-1]))
    return tuple(rho)


def simplex_volume(n: int, t: float = 1.0) -> float:
    """Volume ``t^n / n!`` of the ordered simplex."""
    return t**n / factorial(n)


def sample_simplex(rng: np.random.Generator, n: int, size: int, t: float = 1.0) -> np.ndarray:
    """Uniform samples from the ordered simplex, shape ``(size, n)``."""
    return t * np.sort(rng.random((size, n)), axis=1)
