"""Numerical toolkit for the parabolic Anderson model with fractional Gaussian noise.

Modules
-------
params        Hurst profiles and their exact decimal values.
regions       Chaos and series verdicts, region scans, interpolation parameters.
simplex       Ordered time variables, gaps and the exponent alphabet.
gausskernel   The Gaussian functional behind the time kernel, by sampling and quadrature.
singint       Singular time integrals and the inequalities that bound them.
brascamplieb  Dimension conditions and feasible exponents of Brascamp-Lieb data.
moments       Chaos moments: exact first chaos, bounds, Monte Carlo, divergence probes.
cli           The ``pamlab`` command.
"""
from .errors import (BudgetTooSmall, InvalidInput, NonConvergent, NonIntegrable, OutOfRange,
                     PamlabError, PreconditionViolated, WrongRegime)
from .gausskernel import DEFAULT_SEED, Estimate, Method
from .params import HurstProfile, make_profile, parse_profile, read_profile
from .report import Check, Report

__all__ = [
    "BudgetTooSmall", "Check", "DEFAULT_SEED", "Estimate", "HurstProfile", "InvalidInput",
    "Method", "NonConvergent", "NonIntegrable", "OutOfRange", "PamlabError",
    "PreconditionViolated", "Report", "WrongRegime", "make_profile", "parse_profile", "read_profile",
]
