"""Optional numba acceleration for the series kernels.

Set ``COULOMB_TRAJ_NO_NUMBA=1`` to run every kernel as plain Python/numpy.
The compiled and interpreted paths execute the same source, so results agree
to the last bit except for fused operations numba may emit.
"""
from __future__ import annotations

import os

DISABLE_ENV = "COULOMB_TRAJ_NO_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and numba_requested()


def kernel(fn):
    """Decorate a hot loop: ``njit`` when enabled, identity otherwise.

    The undecorated function is always reachable as ``fn.py_func`` so tests and
    benchmarks can compare both paths inside one process.
    """
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    fn.py_func = fn
    return fn
