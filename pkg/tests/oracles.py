"""Independent brute-force oracles.  Deliberately slow and straightforward;
none of these call into qrlab."""

from fractions import Fraction
from math import comb, isqrt


def squares_mod(p):
    return {x * x % p for x in range(1, p)}


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


def fourth_powers_mod(p):
    return {pow(x, 4, p) for x in range(1, p)}


def pell_bruteforce(p):
    """Minimal (u, v), v ascending, with u^2 - p v^2 = +-4."""
    v = 1
    while True:
        for target in (-4, 4):
            u2 = p * v * v + target
            if u2 > 0:
                u = isqrt(u2)
                if u * u == u2:
                    return u, v
        v += 1


def class_number_imag_forms(p):
    """Number of reduced positive definite forms of discriminant -p."""
    d = -p
    h = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c):
                continue
            h += 1
        a += 1
    return h


def _reduced_indefinite(D):
    s = isqrt(D)
    forms = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4  # negative
        n = -ac
        for a_abs in range(1, n + 1):
            if n % a_abs:
                continue
            if not (2 * a_abs + b >= s + 1 and 2 * a_abs - b <= s):
                continue
            for a in (a_abs, -a_abs):
                forms.append((a, b, ac // a))
    return forms


def _rho(form, D):
    a, b, c = form
    s = isqrt(D)
    ac = abs(c)
    # r = -b mod 2|c| in the window (sqrt D - 2|c|, sqrt D) when |c| < sqrt D
    if ac <= s:
        r = -b % (2 * ac)
        while r + 2 * ac <= s:
            r += 2 * ac
        while r > s:
            r -= 2 * ac
    else:
        r = -b % (2 * ac)
        if r > ac:
            r -= 2 * ac
    return (c, r, (r * r - D) // (4 * c))


def class_number_real_forms(p):
    """Number of rho-cycles of reduced indefinite forms of discriminant p.

    This is the narrow class number; for a prime p = 1 mod 4 the
    fundamental unit has norm -1, so it equals h(p).
    """
    forms = set(_reduced_indefinite(p))
    seen = set()
    cycles = 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho(g, p)
    return cycles


def pi_expansion_exact(coeffs, kmax, p):
    return [sum(c * comb(j, k) for j, c in enumerate(coeffs)) % p for k in range(kmax + 1)]


def harmonic_exact(n, order=1):
    return sum(Fraction(1, x**order) for x in range(1, n + 1))
