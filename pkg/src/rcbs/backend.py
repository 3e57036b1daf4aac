"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the pure
Python twin is used. Both expose the same functions and produce bit-identical
results, so the choice only affects speed. Set ``RCBS_BACKEND=pure`` to force
the fallback (useful for benchmarking and debugging).
"""

import os

if os.environ.get("RCBS_BACKEND", "").lower() in ("pure", "python"):
    from . import _kernels_py as kernels

    BACKEND = "pure-python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "pure-python"


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
