"""Exception hierarchy for qrlab."""


class QrlabError(Exception):
    """Base class for all qrlab errors."""


class InvalidModulusError(QrlabError, ValueError):
    """Modulus is not an odd prime (or not an odd positive integer for Jacobi)."""


class UnsupportedResidueClassError(QrlabError, ValueError):
    """Prime lies outside the residue class an operation is defined for."""


class InvalidArgumentError(QrlabError, ValueError):
    pass


class IdentityViolationError(QrlabError, ArithmeticError):
    """A quantity that must satisfy a proven identity did not.

    Either there is a bug, or a counterexample has been found.
    """


class PrecisionError(QrlabError, ArithmeticError):
    """A numerically computed integer was not close enough to an integer."""
