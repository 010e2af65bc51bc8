"""Backend selection for the hot integer kernels.

Set ``DIGITPATTERNS_NO_NUMBA=1`` in the environment to force the pure-numpy
path.  When numba is not importable the numpy path is used automatically.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("DIGITPATTERNS_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` in nopython mode when numba is installed.

    The undecorated function is returned otherwise, so the numba variants of
    the kernels still run (slowly) as plain Python loops.
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
