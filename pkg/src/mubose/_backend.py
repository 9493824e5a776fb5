"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python
module is a drop-in replacement with identical arithmetic.  Setting
``MUBOSE_PURE_PYTHON=1`` forces the fallback, which is mainly useful
for the backend-parity tests and the benchmark script.
"""

import os

if os.environ.get("MUBOSE_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Name of the active kernel backend, ``cython`` or ``python``."""
    return kernels.BACKEND
