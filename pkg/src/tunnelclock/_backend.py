"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure-NumPy kernels
when the extension was not built.  Setting ``TUNNELCLOCK_PURE=1`` forces the
fallback (useful for benchmarking and for testing both code paths).
"""

import os

if os.environ.get("TUNNELCLOCK_PURE", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Which kernel implementation is active: "cython" or "numpy"."""
    return kernels.NAME
