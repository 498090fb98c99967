"""Time each kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 101,1009,10007,99991] [--repeat 5]

Both backends are called directly through ``kernels.JIT`` / ``kernels.NUMPY``,
so the ``QRLAB_DISABLE_JIT`` flag does not matter here unless numba is
missing, in which case the two columns time the same code.  The first JIT
call per kernel is done before timing so compile or cache-load time is not
counted; it is reported separately as the warm-up column.
"""

import argparse
import time

import numpy as np

from qrlab import kernels
from qrlab.modcore import is_prime, primitive_root


def _prime_at_least(n):
    while not is_prime(n):
        n += 1
    return n


def _cases(p):
    g = primitive_root(p)
    xs = np.arange(1, p, dtype=np.int64)
    coeffs = kernels.NUMPY["inverse_powers"](p, p - 1 - (p - 1) // 4)
    kmax = min(p - 1, 256)
    return {
        "legendre_table": (p,),
        "half_residue_stats": (p,),
        "count_fourth_half": (p,),
        "dlog_table": (p, g),
        "quartic_jacobi_counts": (p, g),
        "chi_square_sum": (p,),
        "inverse_powers": (p, p - 2),
        "product_mod": (xs, p),
        "prefix_product": (xs, p),
        "inverse_power_sum": (xs, 2, p, p - 1),
        "pi_expansion": (np.ascontiguousarray(coeffs, dtype=np.int64), kmax, p),
    }


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="101,1009,10007,99991")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"numba available: {kernels.JIT_ENABLED}; dispatch threshold {kernels.JIT_MIN_SIZE}")
    print(f"{'kernel':<22} {'p':>7} {'warm-up ms':>11} {'numba ms':>10} {'numpy ms':>10} {'ratio':>7}")
    for size in (int(s) for s in args.sizes.split(",")):
        p = _prime_at_least(size)
        for name, call in _cases(p).items():
            start = time.perf_counter()
            kernels.JIT[name](*call)
            warm = time.perf_counter() - start
            t_jit = _best(kernels.JIT[name], call, args.repeat)
            t_np = _best(kernels.NUMPY[name], call, args.repeat)
            print(
                f"{name:<22} {p:>7} {warm * 1e3:>11.3f} {t_jit * 1e3:>10.3f} "
                f"{t_np * 1e3:>10.3f} {t_np / t_jit:>6.1f}x"
            )


if __name__ == "__main__":
    main()
