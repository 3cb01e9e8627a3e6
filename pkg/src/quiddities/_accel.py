"""Numba switch.

Set ``QUIDDITIES_DISABLE_NUMBA=1`` to run every kernel through its
pure-numpy / interpreted fallback instead of the jitted path.
"""

import os

_DISABLED = os.environ.get("QUIDDITIES_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is available, otherwise a no-op decorator.

    The decorated object keeps the plain Python function reachable as
    ``.py_func`` in both cases so callers (and the benchmark) can pick a path.
    """
    kwargs.setdefault("cache", True)

    def wrap(fn):
        if HAVE_NUMBA:
            return _numba.njit(**kwargs)(fn)
        fn.py_func = fn
        return fn

    if args and callable(args[0]):
        return wrap(args[0])
    return wrap
