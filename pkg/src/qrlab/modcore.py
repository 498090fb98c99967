"""Modular arithmetic substrate: residue symbols, factorials, primitive roots,
Gaussian integers and the degree-2 extension of F_p.

Residues mod p are plain Python ints in ``[0, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from . import kernels
from .errors import InvalidModulusError, UnsupportedResidueClassError

# Deterministic Miller-Rabin bases for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes p with lo <= p <= hi, ascending (sieve of Eratosthenes)."""
    if hi < 3:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for q in range(3, isqrt(hi) + 1, 2):
        if sieve[q]:
            sieve[q * q :: 2 * q] = False
    sieve[2] = False
    return [int(p) for p in np.flatnonzero(sieve) if p >= lo]


def _require_odd_prime_modulus(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise InvalidModulusError(f"expected an odd prime modulus, got {p}")


def _require_one_mod_four(p: int) -> None:
    _require_odd_prime_modulus(p)
    if p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 4")


def _distinct_prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest positive primitive root mod the odd prime p."""
    _require_odd_prime_modulus(p)
    qs = _distinct_prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise InvalidModulusError(f"{p} has no primitive root; is it prime?")


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime together with its canonical primitive root.

    ``i_image`` is g^((p-1)/4), the image of i in F_p; None unless p = 1 mod 4.
    """

    p: int
    residue_class: int
    g: int
    i_image: int | None

    @classmethod
    def of(cls, p: int) -> PrimeContext:
        return prime_context(p)


@lru_cache(maxsize=None)
def prime_context(p: int) -> PrimeContext:
    _require_odd_prime_modulus(p)
    if not is_prime(p):
        raise InvalidModulusError(f"{p} is not prime")
    g = primitive_root(p)
    i_image = pow(g, (p - 1) // 4, p) if p % 4 == 1 else None
    return PrimeContext(p=p, residue_class=p % 8, g=g, i_image=i_image)


# ---------------------------------------------------------------------------
# residue symbols
# ---------------------------------------------------------------------------


def legendre(a: int, p: int) -> int:
    _require_odd_prime_modulus(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, via reciprocity."""
    if n < 1 or n % 2 == 0:
        raise InvalidModulusError(f"Jacobi symbol needs odd n >= 1, got {n}")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def quartic_symbol(a: int, p: int) -> int:
    """Rational 4-th power residue symbol.

    Returns -1 for every non-fourth-power, quadratic nonresidues included.
    """
    _require_one_mod_four(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 4, p) == 1 else -1


@lru_cache(maxsize=256)
def legendre_table(p: int) -> np.ndarray:
    """chi[x] = (x/p) for 0 <= x < p, as int8."""
    _require_odd_prime_modulus(p)
    t = kernels.legendre_table(p)
    t.setflags(write=False)
    return t


def count_fourth_power_residues_half(p: int) -> int:
    """Number of fourth-power residues in (0, p/2)."""
    _require_one_mod_four(p)
    return int(kernels.count_fourth_half(p))


# ---------------------------------------------------------------------------
# factorials and roots
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _factorial_table(p: int) -> np.ndarray:
    t = kernels.prefix_product(np.arange(1, p, dtype=np.int64), p)
    t.setflags(write=False)
    return t


def factorial_mod(n: int, p: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1 % p
    if n >= p:
        return 0
    return int(_factorial_table(p)[n - 1])


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller square root of a mod p (Tonelli-Shanks), or None for a nonresidue."""
    _require_odd_prime_modulus(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, x = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, x = t * c % p, x * b % p
    return min(x, p - x)


def smallest_nonresidue(p: int) -> int:
    _require_odd_prime_modulus(p)
    d = 2
    while legendre(d, p) != -1:
        d += 1
    return d


# ---------------------------------------------------------------------------
# Gaussian integers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def reduce(self, p: int, i_image: int) -> int:
        """Image in F_p under i -> i_image."""
        return (self.re + self.im * i_image) % p

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


# ---------------------------------------------------------------------------
# F_p[s]/(s^2 - d)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadExtElem:
    """x + y*s in F_p[s]/(s^2 - d).

    With d a quadratic nonresidue this is F_{p^2}; with d = 0 (mod p) it is
    the dual-number ring, which is all the unit congruence needs.
    """

    x: int
    y: int
    d: int
    p: int

    @classmethod
    def base(cls, x: int, d: int, p: int) -> QuadExtElem:
        return cls(x % p, 0, d % p, p)

    def _like(self, x: int, y: int) -> QuadExtElem:
        return QuadExtElem(x % self.p, y % self.p, self.d, self.p)

    def __add__(self, other: QuadExtElem) -> QuadExtElem:
        return self._like(self.x + other.x, self.y + other.y)

    def __neg__(self) -> QuadExtElem:
        return self._like(-self.x, -self.y)

    def __mul__(self, other: QuadExtElem) -> QuadExtElem:
        return self._like(
            self.x * other.x + self.d * self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def __pow__(self, n: int) -> QuadExtElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = self._like(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def norm(self) -> int:
        return (self.x * self.x - self.d * self.y * self.y) % self.p

    def inverse(self) -> QuadExtElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("element is not invertible")
        inv = pow(n, -1, self.p)
        return self._like(self.x * inv, -self.y * inv)

    def is_base(self) -> bool:
        return self.y == 0


def sqrt_in_extension(a: int, p: int, d: int | None = None) -> QuadExtElem:
    """A square root of a in F_{p^2} = F_p[s]/(s^2 - d), d a nonresidue.

    The other root is its negative.
    """
    if d is None:
        d = smallest_nonresidue(p)
    r = sqrt_mod(a, p)
    if r is not None:
        return QuadExtElem(r, 0, d, p)
    # a = d * y^2 for some y
    y = sqrt_mod(a * pow(d, -1, p), p)
    return QuadExtElem(0, y, d, p)
