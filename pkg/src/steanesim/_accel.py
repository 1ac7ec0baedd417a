"""Numba toggle shared by every hot kernel.

Set ``QSIM_DISABLE_NUMBA=1`` to run the pure Python / numpy fallback path.
The flag is read once at import time.
"""

import os

_DISABLED = os.environ.get("QSIM_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised in the fallback CI job
    _njit = None
    HAVE_NUMBA = False


def jit(func=None, *, fastmath=False, inline=False):
    """``numba.njit(cache=True, nogil=True)`` when numba is enabled, identity otherwise.

    Kernels use numpy's error model: the Python one makes any function with a
    float division raise-capable, which blocks inlining and cost about 60 ns
    per call in the trial loops.  No kernel divides by a value that can be
    zero.  ``inline=True`` inlines at numba IR level, which also removes the
    reference counting of array arguments (about 14 ns per array per call);
    use it for small helpers called from hot loops.  ``fastmath`` is for pure
    amplitude arithmetic only; anything that feeds the fault sampler must
    stay bit-identical to the Python fallback.
    """
    if func is None:
        return lambda f: jit(f, fastmath=fastmath, inline=inline)
    if HAVE_NUMBA:
        return _njit(cache=True, nogil=True, fastmath=fastmath, error_model="numpy",
                      inline="always" if inline else "never")(func)
    return func


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
