"""Exception types raised across the package."""


class PamlabError(Exception):
    """Base class for all package errors."""


class InvalidInput(PamlabError, ValueError):
    """Input that does not describe a valid problem."""


class OutOfRange(InvalidInput):
    """A Hurst parameter lies outside its admissible interval."""


class EmptyDimension(InvalidInput):
    """A profile with no spatial Hurst parameters."""


class EmptyGrid(InvalidInput):
    """A scan grid with no nodes."""


class WrongRegime(InvalidInput):
    """The requested computation is not defined for this profile."""


class RegimeUnavailable(WrongRegime):
    """No bound route applies to the profile."""


class DegenerateGap(InvalidInput):
    """Time points that are not strictly increasing."""


class RankDeficientMap(InvalidInput):
    """A linear map in a Brascamp-Lieb datum that is not surjective."""


class PreconditionViolated(InvalidInput):
    """Exponents outside the window where an estimate is stated."""


class NonIntegrable(InvalidInput):
    """Singular exponents that make an integral diverge."""


class NonConvergent(PamlabError, ArithmeticError):
    """A numerical scheme failed its own convergence check."""


class BudgetTooSmall(NonConvergent):
    """A Monte Carlo estimate is too noisy for the requested budget."""
