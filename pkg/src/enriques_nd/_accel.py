"""Backend selection for the compiled kernels.

Set ``ENRIQUES_ND_NO_NUMBA=1`` to force the pure-numpy path even when numba
is importable.
"""
import os

_DISABLED = os.environ.get("ENRIQUES_ND_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("disabled by ENRIQUES_ND_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    njit = None
    HAVE_NUMBA = False


def jit(func):
    """Compile ``func`` in nopython mode, or return it untouched."""
    if njit is None:
        return func
    return njit(cache=True, nogil=True)(func)


__all__ = ["HAVE_NUMBA", "jit"]
