"""Exception types shared across the package.

The CLI maps these onto exit codes: hypothesis/scope violations exit 2,
budget refusals exit 3, everything else is an ordinary failure.
"""


class RelK2Error(Exception):
    """Base class for package-specific errors."""


class SpecMismatchError(RelK2Error, ValueError):
    """Operands belong to different group specs or different moduli."""


class HypothesisError(RelK2Error):
    """A stated theorem hypothesis does not hold for the requested input."""


class ScopeError(RelK2Error):
    """The input is outside the supported scope (not a wrong answer)."""


class SizeBudgetError(RelK2Error):
    """The computation would exceed a hard size budget and is refused."""


class LatticeRankError(RelK2Error, ValueError):
    """A lattice basis matrix is rank deficient where full rank is required."""
