"""Kernel backend selection: numba-jitted hot loops or plain numpy.

The environment variable ``POVM_CERTIFY_BACKEND`` picks the implementation:
``"numba"`` (default when numba imports cleanly) or ``"numpy"``. The numpy
path runs the exact same kernel source uncompiled, so results agree; only
speed differs. ``benchmarks/backend_bench.py`` measures the gap.
"""

from __future__ import annotations

import os

_ENV_VAR = "POVM_CERTIFY_BACKEND"
_VALID = ("numba", "numpy")


def _resolve() -> str:
    requested = os.environ.get(_ENV_VAR, "").strip().lower()
    if requested and requested not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {requested!r}")
    if requested == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if requested == "numba":
            raise
        return "numpy"
    return "numba"


BACKEND = _resolve()


def use_numba() -> bool:
    return BACKEND == "numba"


def jit(func):
    """Wrap ``func`` with ``numba.njit`` on the numba backend, else return it as is.

    ``nogil=True`` lets threaded trial fan-out overlap kernel execution;
    ``cache=True`` keeps compilation out of repeat process startups.
    """
    if not use_numba():
        return func
    import numba

    return numba.njit(cache=True, nogil=True)(func)
