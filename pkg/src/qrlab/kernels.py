"""Hot integer loops over residues mod p.

Every kernel has two implementations: a scalar loop compiled with numba
(``*_jit``) and a vectorised numpy version (``*_np``).  The public names at
the bottom of the module pick the numba version for large inputs and the
numpy one for small inputs or when ``QRLAB_DISABLE_JIT`` is set.  Both are always importable so tests and the
benchmark can compare them directly.

All arithmetic is in int64.  Moduli must stay below ~3e9 so that a product
of two residues fits; callers in this package never go near that.
"""

import numpy as np

from ._jit import JIT_ENABLED, njit

MAX_MODULUS = 3_037_000_499  # floor(sqrt(2**63 - 1))


# ---------------------------------------------------------------------------
# numba scalar loops
# ---------------------------------------------------------------------------


@njit(cache=True)
def _powmod_jit(b, e, m):
    r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


@njit(cache=True)
def legendre_table_jit(p):
    t = np.full(p, -1, dtype=np.int8)
    t[0] = 0
    for x in range(1, (p - 1) // 2 + 1):
        t[x * x % p] = 1
    return t


@njit(cache=True)
def fourth_power_mask_jit(p):
    mask = np.zeros(p, dtype=np.bool_)
    for x in range(1, p):
        s = x * x % p
        mask[s * s % p] = True
    return mask


@njit(cache=True)
def half_residue_stats_jit(p):
    # (R, N, A, B, M) over 0 < x < p/2
    t = legendre_table_jit(p)
    r = 0
    n = 0
    a = 0
    b = 0
    m = 1
    for x in range(1, (p - 1) // 2 + 1):
        if t[x] == 1:
            r += 1
            a += x
            m = m * x % p
        else:
            n += 1
            b += x
    return r, n, a, b, m


@njit(cache=True)
def count_fourth_half_jit(p):
    mask = fourth_power_mask_jit(p)
    c = 0
    for x in range(1, (p - 1) // 2 + 1):
        if mask[x]:
            c += 1
    return c


@njit(cache=True)
def prefix_product_jit(values, m):
    out = np.empty(values.shape[0], dtype=np.int64)
    acc = 1 % m
    for i in range(values.shape[0]):
        acc = acc * (values[i] % m) % m
        out[i] = acc
    return out


@njit(cache=True)
def product_mod_jit(values, m):
    acc = 1 % m
    for i in range(values.shape[0]):
        acc = acc * (values[i] % m) % m
    return acc


@njit(cache=True)
def dlog_table_jit(p, g):
    lg = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        lg[x] = k
        x = x * g % p
    return lg


@njit(cache=True)
def quartic_jacobi_counts_jit(p, g):
    lg = dlog_table_jit(p, g)
    counts = np.zeros(4, dtype=np.int64)
    for t in range(2, p):
        counts[(lg[t] + lg[(1 - t) % p]) % 4] += 1
    return counts


@njit(cache=True)
def inverse_power_sum_jit(xs, n, m, phi):
    # sum of x^-n mod m; phi is the group exponent of (Z/m)^*
    s = 0
    e = (phi - 1) * n
    for i in range(xs.shape[0]):
        s = (s + _powmod_jit(xs[i], e, m)) % m
    return s


@njit(cache=True)
def inverse_powers_jit(p, e):
    # t -> t^e mod p for t in [0, p); entry 0 forced to 0
    out = np.zeros(p, dtype=np.int64)
    for t in range(1, p):
        out[t] = _powmod_jit(t, e, p)
    return out


@njit(cache=True)
def pi_expansion_jit(coeffs, kmax, p):
    # e_k = sum_j c_j * binom(j, k) mod p, Pascal row streamed over j
    row = np.zeros(kmax + 1, dtype=np.int64)
    e = np.zeros(kmax + 1, dtype=np.int64)
    row[0] = 1
    for j in range(coeffs.shape[0]):
        if j > 0:
            top = min(j, kmax)
            for k in range(top, 0, -1):
                row[k] = (row[k] + row[k - 1]) % p
        c = coeffs[j] % p
        if c != 0:
            for k in range(min(j, kmax) + 1):
                e[k] = (e[k] + c * row[k]) % p
    return e


@njit(cache=True)
def chi_square_sum_jit(p):
    t = legendre_table_jit(p)
    s = 0
    for a in range(1, p):
        s += np.int64(t[a]) * a * a
    return s


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------


def powmod_array(base, exp, m):
    """Elementwise ``base**exp % m`` for int64 arrays (or scalars) by binary powering."""
    base = np.asarray(base, dtype=np.int64) % m
    exp = np.asarray(exp, dtype=np.int64)
    base, exp = np.broadcast_arrays(base, exp)
    base = base.copy()
    exp = exp.copy()
    result = np.ones(base.shape, dtype=np.int64) % m
    while np.any(exp > 0):
        odd = (exp & 1).astype(bool)
        result[odd] = result[odd] * base[odd] % m
        base = base * base % m
        exp >>= 1
    return result


def legendre_table_np(p):
    t = np.full(p, -1, dtype=np.int8)
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    t[x * x % p] = 1
    t[0] = 0
    return t


def fourth_power_mask_np(p):
    mask = np.zeros(p, dtype=bool)
    x = np.arange(1, p, dtype=np.int64)
    s = x * x % p
    mask[s * s % p] = True
    return mask


def product_mod_np(values, m):
    v = np.asarray(values, dtype=np.int64) % m
    if v.size == 0:
        return 1 % m
    # pairwise tree reduction
    while v.size > 1:
        if v.size & 1:
            v = np.append(v, 1)
        v = v[0::2] * v[1::2] % m
    return int(v[0])


def prefix_product_np(values, m):
    # Hillis-Steele scan, log2(n) vectorised passes
    a = np.asarray(values, dtype=np.int64) % m
    shift = 1
    while shift < a.size:
        a[shift:] = a[shift:] * a[:-shift] % m
        shift <<= 1
    return a


def half_residue_stats_np(p):
    t = legendre_table_np(p)
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    res = t[1 : (p - 1) // 2 + 1] == 1
    r = int(res.sum())
    n = x.size - r
    a = int(x[res].sum())
    b = int(x[~res].sum())
    m = product_mod_np(x[res], p)
    return r, n, a, b, m


def count_fourth_half_np(p):
    return int(fourth_power_mask_np(p)[1 : (p - 1) // 2 + 1].sum())


def dlog_table_np(p, g):
    k = np.arange(p - 1, dtype=np.int64)
    lg = np.full(p, -1, dtype=np.int64)
    lg[powmod_array(g, k, p)] = k
    return lg


def quartic_jacobi_counts_np(p, g):
    lg = dlog_table_np(p, g)
    t = np.arange(2, p, dtype=np.int64)
    tot = (lg[t] + lg[(1 - t) % p]) % 4
    return np.bincount(tot, minlength=4).astype(np.int64)


def inverse_power_sum_np(xs, n, m, phi):
    xs = np.asarray(xs, dtype=np.int64)
    if xs.size == 0:
        return 0
    inv = powmod_array(xs, (phi - 1) * n, m)
    return int(inv.sum() % m)


def inverse_powers_np(p, e):
    out = powmod_array(np.arange(p, dtype=np.int64), e, p)
    out[0] = 0
    return out


def pi_expansion_np(coeffs, kmax, p):
    # column recurrence binom(j, k) = binom(j, k-1) * (j-k+1) / k, vectorised over j
    c = np.asarray(coeffs, dtype=np.int64) % p
    j = np.arange(c.size, dtype=np.int64)
    col = np.ones(c.size, dtype=np.int64)
    e = np.zeros(kmax + 1, dtype=np.int64)
    e[0] = int(c.sum() % p)
    for k in range(1, kmax + 1):
        inv_k = pow(k, -1, p)
        col = col * ((j - k + 1) % p) % p * inv_k % p
        e[k] = int((c * col % p).sum() % p)
    return e


def chi_square_sum_np(p):
    t = legendre_table_np(p).astype(np.int64)
    a = np.arange(p, dtype=np.int64)
    return int((t * a * a).sum())


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

JIT = {
    "legendre_table": legendre_table_jit,
    "fourth_power_mask": fourth_power_mask_jit,
    "half_residue_stats": half_residue_stats_jit,
    "count_fourth_half": count_fourth_half_jit,
    "product_mod": product_mod_jit,
    "prefix_product": prefix_product_jit,
    "dlog_table": dlog_table_jit,
    "quartic_jacobi_counts": quartic_jacobi_counts_jit,
    "inverse_power_sum": inverse_power_sum_jit,
    "inverse_powers": inverse_powers_jit,
    "pi_expansion": pi_expansion_jit,
    "chi_square_sum": chi_square_sum_jit,
}

NUMPY = {
    "legendre_table": legendre_table_np,
    "fourth_power_mask": fourth_power_mask_np,
    "half_residue_stats": half_residue_stats_np,
    "count_fourth_half": count_fourth_half_np,
    "product_mod": product_mod_np,
    "prefix_product": prefix_product_np,
    "dlog_table": dlog_table_np,
    "quartic_jacobi_counts": quartic_jacobi_counts_np,
    "inverse_power_sum": inverse_power_sum_np,
    "inverse_powers": inverse_powers_np,
    "pi_expansion": pi_expansion_np,
    "chi_square_sum": chi_square_sum_np,
}

BACKEND = "numba" if JIT_ENABLED else "numpy"

# Warm numba beats numpy at every size, but the first jit call costs about
# half a second (numba import plus cache load).  Small inputs take the numpy
# path so short runs never pay that; see benchmarks/bench_kernels.py.
JIT_MIN_SIZE = 1024


def _size_dispatch(name, size_of):
    fast, small = JIT[name], NUMPY[name]
    if not JIT_ENABLED:
        return small

    def kernel(*args):
        return fast(*args) if size_of(*args) >= JIT_MIN_SIZE else small(*args)

    kernel.__name__ = name
    kernel.__doc__ = small.__doc__
    return kernel


def _by_modulus(p, *rest):
    return p


def _by_length(values, *rest):
    return len(values)


legendre_table = _size_dispatch("legendre_table", _by_modulus)
fourth_power_mask = _size_dispatch("fourth_power_mask", _by_modulus)
half_residue_stats = _size_dispatch("half_residue_stats", _by_modulus)
count_fourth_half = _size_dispatch("count_fourth_half", _by_modulus)
product_mod = _size_dispatch("product_mod", _by_length)
prefix_product = _size_dispatch("prefix_product", _by_length)
dlog_table = _size_dispatch("dlog_table", _by_modulus)
quartic_jacobi_counts = _size_dispatch("quartic_jacobi_counts", _by_modulus)
inverse_power_sum = _size_dispatch("inverse_power_sum", _by_length)
inverse_powers = _size_dispatch("inverse_powers", _by_modulus)
pi_expansion = _size_dispatch("pi_expansion", _by_length)
chi_square_sum = _size_dispatch("chi_square_sum", _by_modulus)
