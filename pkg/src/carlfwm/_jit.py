"""numba shim.

Set ``CARLFWM_DISABLE_JIT=1`` to force the pure-numpy kernels (useful for
debugging with the interpreter, or where numba is not installed).
"""

import os

JIT_DISABLED = os.environ.get("CARLFWM_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


USE_JIT = HAVE_NUMBA and not JIT_DISABLED
