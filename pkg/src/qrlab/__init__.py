"""qrlab: residue symbols, quadratic invariants, quartic Jacobi and Gauss sums,
and batch verification of congruences for products of quadratic residues."""

from .errors import (
    IdentityViolationError,
    InvalidArgumentError,
    InvalidModulusError,
    PrecisionError,
    QrlabError,
    UnsupportedResidueClassError,
)
from .kernels import BACKEND
from .modcore import (
    GaussianInt,
    PrimeContext,
    QuadExtElem,
    factorial_mod,
    jacobi,
    legendre,
    prime_context,
    quartic_symbol,
    sqrt_mod,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GaussianInt",
    "IdentityViolationError",
    "InvalidArgumentError",
    "InvalidModulusError",
    "PrecisionError",
    "PrimeContext",
    "QrlabError",
    "QuadExtElem",
    "UnsupportedResidueClassError",
    "factorial_mod",
    "jacobi",
    "legendre",
    "prime_context",
    "quartic_symbol",
    "sqrt_mod",
]
