"""Numba/numpy backend selection.

The hot loops (term-table evaluation in kernels.py) have two
implementations: a numba-jitted one and a vectorized numpy one. Selection
happens once at import time:

  * if numba is importable and the env var SWSH_NUMBA is unset or truthy,
    the jitted path is used;
  * SWSH_NUMBA=0 (or "false"/"off") forces the numpy path, which is also
    the automatic fallback when numba is missing.

Both paths are importable explicitly for benchmarking.
"""

import os

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        # no-op decorator so kernel definitions stay importable
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


def _env_wants_numba():
    val = os.environ.get("SWSH_NUMBA", "").strip().lower()
    return val not in ("0", "false", "off", "no")


USE_NUMBA = HAVE_NUMBA and _env_wants_numba()
