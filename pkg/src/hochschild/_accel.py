"""Numba switch for the hot kernels.

Set ``HOCHSCHILD_NUMBA=0`` before import to run the pure numpy fallbacks.
"""
import os

_flag = os.environ.get("HOCHSCHILD_NUMBA", "1").strip().lower()
_wanted = _flag not in ("0", "false", "no", "off")

try:
    if not _wanted:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def njit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func
