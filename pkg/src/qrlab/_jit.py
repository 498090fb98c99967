"""Switch between numba-compiled kernels and the pure-numpy fallbacks.

Set ``QRLAB_DISABLE_JIT=1`` to force the numpy path (useful for debugging
and for the benchmark that compares both).

numba is imported lazily: ``njit`` here only records the function, and the
first call to any decorated kernel imports numba and swaps every recorded
function in its module globals for a real dispatcher.  Swapping all of them
at once matters because compiled kernels call each other by global name.
Short CLI runs that only touch small primes never pay for the import.
"""

import importlib.util
import os

_DISABLED = os.environ.get("QRLAB_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")

HAVE_NUMBA = not _DISABLED and importlib.util.find_spec("numba") is not None
JIT_ENABLED = HAVE_NUMBA

_pending = []
_materialized = False


def _materialize():
    global _materialized
    if _materialized:
        return
    import numba

    for lazy in _pending:
        lazy._dispatcher = numba.njit(**lazy._options)(lazy.py_func)
        lazy.py_func.__globals__[lazy.py_func.__name__] = lazy._dispatcher
    _materialized = True


class LazyKernel:
    def __init__(self, func, options):
        self.py_func = func
        self._options = options
        self._dispatcher = None
        self.__name__ = func.__name__
        self.__doc__ = func.__doc__

    def __call__(self, *args):
        if self._dispatcher is None:
            _materialize()
        return self._dispatcher(*args)


def njit(func=None, **options):
    def wrap(f):
        if not HAVE_NUMBA:
            return f
        lazy = LazyKernel(f, options)
        _pending.append(lazy)
        return lazy

    return wrap(func) if func is not None else wrap
