"""Kernel backend selection.

Numba-compiled kernels are used when numba imports cleanly and the
``INDROOT_DISABLE_NUMBA`` environment variable is unset (or "0").  The
pure-numpy paths are always importable so both can be benchmarked side by
side.
"""
import os

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    _njit = None


def numba_requested() -> bool:
    flag = os.environ.get("INDROOT_DISABLE_NUMBA", "0").strip().lower()
    return flag in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and numba_requested()


def optional_njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, identity otherwise."""

    def decorator(func):
        if HAVE_NUMBA:
            return _njit(*args, **kwargs)(func)
        return func

    return decorator
