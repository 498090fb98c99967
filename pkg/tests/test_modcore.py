import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import isprime, jacobi_symbol

from qrlab.errors import InvalidModulusError, UnsupportedResidueClassError
from qrlab.modcore import (
    GaussianInt,
    QuadExtElem,
    count_fourth_power_residues_half,
    factorial_mod,
    is_prime,
    jacobi,
    legendre,
    odd_primes,
    prime_context,
    primitive_root,
    quartic_symbol,
    sqrt_in_extension,
    sqrt_mod,
)

from oracles import fourth_powers_mod, legendre_by_squares

PRIMES = odd_primes(3, 300)
primes = st.sampled_from(PRIMES)
primes_1mod4 = st.sampled_from([p for p in PRIMES if p % 4 == 1])


@pytest.mark.parametrize("a,p,expected", [(1, 7, 1), (14, 7, 0), (5, 13, -1)])
def test_legendre_examples(a, p, expected):
    assert legendre(a, p) == expected


@pytest.mark.parametrize("p", [2, 1, 0, -3, 4])
def test_legendre_rejects_bad_modulus(p):
    with pytest.raises(InvalidModulusError):
        legendre(1, p)


@pytest.mark.parametrize("a,n,expected", [(5, 1, 1), (2, 15, 1), (1, 9, 1)])
def test_jacobi_examples(a, n, expected):
    assert jacobi(a, n) == expected


def test_jacobi_rejects_even():
    with pytest.raises(InvalidModulusError):
        jacobi(3, 10)


@given(st.integers(-10**6, 10**6), st.integers(0, 5000))
def test_jacobi_matches_sympy(a, k):
    n = 2 * k + 1
    assert jacobi(a, n) == jacobi_symbol(a, n)


@given(st.integers(-1000, 1000), primes)
def test_legendre_matches_jacobi_and_enumeration(a, p):
    assert legendre(a, p) == jacobi(a, p) == legendre_by_squares(a, p)


@given(st.integers(1, 10**4), st.integers(1, 10**4), primes)
def test_legendre_multiplicative(a, b, p):
    assume(a % p and b % p)
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


@pytest.mark.parametrize("a,p,expected", [(1, 13, 1), (3, 13, 1), (2, 13, -1), (13, 13, 0)])
def test_quartic_symbol_examples(a, p, expected):
    assert quartic_symbol(a, p) == expected


@pytest.mark.parametrize("p", [p for p in PRIMES if p % 8 == 5])
def test_minus_one_is_fourth_nonresidue_for_5_mod_8(p):
    assert quartic_symbol(-1, p) == -1


def test_quartic_symbol_wrong_class():
    with pytest.raises(UnsupportedResidueClassError):
        quartic_symbol(2, 7)


@given(st.integers(1, 10**4), primes_1mod4)
def test_quartic_symbol_matches_enumeration(a, p):
    expected = 0 if a % p == 0 else (1 if a % p in fourth_powers_mod(p) else -1)
    assert quartic_symbol(a, p) == expected


@given(st.integers(1, 300), st.integers(1, 300), primes_1mod4)
def test_quartic_symbol_multiplicative_on_residues(x, y, p):
    xr, yr = x * x % p, y * y % p
    assume(xr and yr)
    assert quartic_symbol(xr * yr, p) == quartic_symbol(xr, p) * quartic_symbol(yr, p)


@pytest.mark.parametrize("p,expected", [(5, 1), (13, 2), (29, 2)])
def test_count_fourth_power_residues_half(p, expected):
    assert count_fourth_power_residues_half(p) == expected


def test_count_fourth_wrong_class():
    with pytest.raises(UnsupportedResidueClassError):
        count_fourth_power_residues_half(11)


@pytest.mark.parametrize("n,p,expected", [(0, 17, 1), (8, 17, 13), (20, 17, 0)])
def test_factorial_examples(n, p, expected):
    assert factorial_mod(n, p) == expected


@pytest.mark.parametrize("p", PRIMES)
def test_wilson(p):
    assert factorial_mod(p - 1, p) == p - 1


@given(st.integers(0, 299), primes)
def test_factorial_matches_direct_product(n, p):
    expected = 1
    for k in range(1, n + 1):
        expected = expected * k % p
    assert factorial_mod(n, p) == expected


@pytest.mark.parametrize("a,p,expected", [(1, 7, 1), (2, 7, 3), (5, 13, None), (0, 11, 0)])
def test_sqrt_mod_examples(a, p, expected):
    assert sqrt_mod(a, p) == expected


@given(st.integers(0, 10**5), primes)
def test_sqrt_mod_properties(a, p):
    r = sqrt_mod(a, p)
    if legendre(a, p) == -1:
        assert r is None
    else:
        assert r * r % p == a % p
        assert r <= (p - 1) // 2


@pytest.mark.parametrize("p", PRIMES)
def test_wilson_half_product(p):
    if p % 4 != 1:
        return
    from qrlab.verify import brute_Mp

    m = brute_Mp(p)
    assert m * m % p == (1 if p % 8 == 5 else p - 1)


@pytest.mark.parametrize("p", PRIMES)
def test_prime_context_invariants(p):
    ctx = prime_context(p)
    assert ctx.residue_class == p % 8
    assert len({pow(ctx.g, k, p) for k in range(p - 1)}) == p - 1
    assert all(len({pow(g, k, p) for k in range(p - 1)}) < p - 1 for g in range(2, ctx.g))
    if p % 4 == 1:
        assert ctx.i_image * ctx.i_image % p == p - 1
    else:
        assert ctx.i_image is None


def test_primitive_root_small():
    assert primitive_root(7) == 3
    assert primitive_root(17) == 3
    assert primitive_root(41) == 6


def test_odd_primes_and_is_prime():
    assert odd_primes(3, 30) == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(n) == isprime(n) for n in range(-5, 3000))
    assert is_prime(2**61 - 1) and not is_prime(3215031751)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_gaussian_int_norm_multiplicative(a, b, c, d):
    x, y = GaussianInt(a, b), GaussianInt(c, d)
    assert x * y == y * x
    assert (x * y).norm() == x.norm() * y.norm()
    assert complex(x * y) == complex(x) * complex(y)


@given(primes, st.integers(0, 10**4), st.integers(0, 10**4))
def test_quad_ext_field_arithmetic(p, x, y):
    from qrlab.modcore import smallest_nonresidue

    d = smallest_nonresidue(p)
    e = QuadExtElem(x % p, y % p, d, p)
    s = QuadExtElem(0, 1, d, p)
    assert (s * s) == QuadExtElem.base(d, d, p)
    if e.x or e.y:
        assert e * e.inverse() == QuadExtElem.base(1, d, p)
        assert e ** (p * p - 1) == QuadExtElem.base(1, d, p)


@given(primes, st.integers(1, 10**4))
def test_sqrt_in_extension(p, a):
    assume(a % p)
    r = sqrt_in_extension(a, p)
    sq = r * r
    assert sq.is_base() and sq.x == a % p
