"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it is
missing or when SPINSURF_PURE_PYTHON is set in the environment.
"""

import os

if os.environ.get("SPINSURF_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND
fd_diff_2d = kernels.fd_diff_2d
cumtrapz_2d = kernels.cumtrapz_2d
