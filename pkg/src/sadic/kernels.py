"""Kernel selection.

The compiled extension is used when it imports cleanly; setting the
environment variable ``SADIC_PURE_PYTHON=1`` forces the Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("SADIC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

count_overlapping = _impl.count_overlapping
factor_counts = _impl.factor_counts
factor_set = _impl.factor_set
essential_factor_counts = _impl.essential_factor_counts

__all__ = [
    "BACKEND",
    "count_overlapping",
    "factor_counts",
    "factor_set",
    "essential_factor_counts",
]
