"""The quartic character mod p, its Jacobi sum, and the p = a^2 + 16 b^2 data.

Convention: chi(g^k) = (-i)^k for the canonical smallest primitive root g,
i.e. chi is the inverse fourth power of the Teichmuller-type character
sending g to exp(2 pi i/(p-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .classfield import fundamental_unit
from .errors import IdentityViolationError, UnsupportedResidueClassError
from .modcore import (
    GaussianInt,
    PrimeContext,
    QuadExtElem,
    _require_odd_prime_modulus,
    factorial_mod,
    prime_context,
    quartic_symbol,
    smallest_nonresidue,
    sqrt_in_extension,
    sqrt_mod,
)

# (-i)^k for k = 0..3, as (re, im)
_MINUS_I_POWERS = ((1, 0), (0, -1), (-1, 0), (0, 1))


@dataclass(frozen=True)
class QuarticDecomposition:
    """p = a^2 + 16 b^2 with a = 3 mod 4; only |b| is canonical."""

    p: int
    a: int
    b_abs: int


@dataclass(frozen=True)
class QuarticCharacter:
    ctx: PrimeContext
    exponents: np.ndarray  # k with chi(t) = (-i)^k; -1 at t = 0

    def __call__(self, t: int) -> GaussianInt:
        k = int(self.exponents[t % self.ctx.p])
        if k < 0:
            return GaussianInt(0, 0)
        return GaussianInt(*_MINUS_I_POWERS[k])


def _require_p1mod8(p: int) -> None:
    _require_odd_prime_modulus(p)
    if p % 8 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 8")


def two_squares(p: int) -> tuple[int, int]:
    """(x, y) with x^2 + y^2 = p, x odd, for a prime p = 1 mod 4 (Cornacchia)."""
    r0 = sqrt_mod(p - 1, p)
    if r0 is None:
        raise UnsupportedResidueClassError(f"-1 is not a square mod {p}")
    a, b = p, r0
    bound = isqrt(p)
    while b > bound:
        a, b = b, a % b
    x = b
    y = isqrt(p - x * x)
    if x * x + y * y != p:
        raise IdentityViolationError(f"Cornacchia failed for p={p}")
    return (x, y) if x % 2 else (y, x)


def _normalize(p: int, odd: int, even: int) -> QuarticDecomposition:
    if even % 4:
        raise IdentityViolationError(f"even square root {even} of p={p} not divisible by 4")
    a = odd if odd % 4 == 3 else -odd
    return QuarticDecomposition(p=p, a=a, b_abs=even // 4)


def decompose(p: int) -> QuarticDecomposition:
    _require_p1mod8(p)
    x, y = two_squares(p)
    return _normalize(p, x, y)


def decompose_bruteforce(p: int) -> QuarticDecomposition:
    """Exhaustive search over |b|; used to cross-check ``decompose``."""
    _require_p1mod8(p)
    for b in range(1, isqrt(p // 16) + 1):
        rest = p - 16 * b * b
        a = isqrt(rest)
        if a * a == rest:
            return _normalize(p, a, 4 * b)
    raise IdentityViolationError(f"no representation p = a^2 + 16 b^2 for p={p}")


def quartic_character(ctx: PrimeContext) -> QuarticCharacter:
    if ctx.p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={ctx.p} is not 1 mod 4")
    lg = kernels.dlog_table(ctx.p, ctx.g)
    ex = np.where(lg >= 0, lg % 4, -1)
    ex.setflags(write=False)
    return QuarticCharacter(ctx=ctx, exponents=ex)


def jacobi_sum(ctx: PrimeContext) -> GaussianInt:
    """J(chi, chi) = sum_t chi(t) chi(1 - t), exact."""
    if ctx.p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={ctx.p} is not 1 mod 4")
    n0, n1, n2, n3 = (int(c) for c in kernels.quartic_jacobi_counts(ctx.p, ctx.g))
    return GaussianInt(n0 - n2, n3 - n1)


def jacobi_sum_direct(ctx: PrimeContext) -> GaussianInt:
    """Slow term-by-term Gaussian-integer sum; test oracle for ``jacobi_sum``."""
    chi = quartic_character(ctx)
    total = GaussianInt(0, 0)
    for t in range(ctx.p):
        total = total + chi(t) * chi(1 - t)
    return total


def jacobi_congruence_check(ctx: PrimeContext) -> tuple[int, int]:
    """(J mod p via i -> g^((p-1)/4), -((p-1)/2)! / (((p-1)/4)!)^2 mod p)."""
    _require_p1mod8(ctx.p)
    p = ctx.p
    lhs = jacobi_sum(ctx).reduce(p, ctx.i_image)
    f2 = factorial_mod((p - 1) // 2, p)
    f4 = factorial_mod((p - 1) // 4, p)
    rhs = -f2 * pow(f4 * f4, -1, p) % p
    return lhs, rhs


def c_sign_value(p: int) -> int:
    """4|b| a^-1 ((p-1)/2)! mod p, which must be 1 or p - 1."""
    d = decompose(p)
    return 4 * d.b_abs * pow(d.a, -1, p) * factorial_mod((p - 1) // 2, p) % p


def c_sign(p: int) -> int:
    _require_p1mod8(p)
    x = c_sign_value(p)
    if x == 1:
        return 1
    if x == p - 1:
        return -1
    raise IdentityViolationError(f"4|b|/a ((p-1)/2)! = {x} mod {p} is not +-1")


def two_is_fourth_power(p: int) -> tuple[bool, bool]:
    """(|b| even, 2 is a fourth power mod p); the two must agree."""
    _require_p1mod8(p)
    d = decompose(p)
    return d.b_abs % 2 == 0, quartic_symbol(2, p) == 1


def beta_ratio_candidates(p: int) -> list[QuadExtElem]:
    """eps^(h/2) / (((p-1)/4)! J^(1/2)) mod a prime above p, for both root choices.

    The sign that corresponds to the real positive roots is not recoverable
    from residues alone, so both candidates are returned; each must square
    to 1.
    """
    _require_p1mod8(p)
    ctx = prime_context(p)
    unit = fundamental_unit(p)
    d = smallest_nonresidue(p)
    half_u = unit.u * pow(2, -1, p) % p  # eps = u/2 mod the prime above p
    eps_root = sqrt_in_extension(half_u, p, d) ** unit.h
    j_red = jacobi_sum(ctx).reduce(p, ctx.i_image)
    j_root = sqrt_in_extension(j_red, p, d)
    f4 = QuadExtElem.base(factorial_mod((p - 1) // 4, p), d, p)
    out = []
    for s in (1, -1):
        jr = j_root if s == 1 else -j_root
        ratio = eps_root * (f4 * jr).inverse()
        sq = ratio * ratio
        if not (sq.is_base() and sq.x == 1):
            raise IdentityViolationError(f"beta ratio does not square to 1 mod p={p}")
        out.append(ratio)
    return out
