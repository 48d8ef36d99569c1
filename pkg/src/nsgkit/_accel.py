"""Backend selection for the hot kernels.

Set ``NSGKIT_DISABLE_NUMBA=1`` to force the pure-numpy path. If numba cannot
be imported the numpy path is used as well.
"""

import os

_disabled = os.environ.get("NSGKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError("numba disabled by NSGKIT_DISABLE_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def jit(fn):
    """Compile ``fn`` with ``numba.njit`` when available, else return it unchanged."""
    if _njit is None:
        return fn
    return _njit(cache=True)(fn)
