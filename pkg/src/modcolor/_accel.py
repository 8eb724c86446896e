"""Switch between numba-compiled kernels and their pure-numpy fallbacks.

Set ``MODCOLOR_NUMBA=0`` to force the fallback path.  The flag is read on
every dispatch, so it can be flipped at runtime (tests do this).
"""
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def use_numba():
    return HAVE_NUMBA and os.environ.get("MODCOLOR_NUMBA", "1") not in ("0", "false", "no")


def njit(fn):
    """Compile ``fn`` with numba when available, else return ``fn`` unchanged."""
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
