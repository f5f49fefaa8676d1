"""Backend selection for the hot loops.

The compiled module is used when it was built; setting ``K3LATTICE_PURE=1``
forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from ._kernels import _pure

BACKEND = "python"
short_vectors = _pure.short_vectors
value_histogram = _pure.value_histogram

if os.environ.get("K3LATTICE_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import _speedups
    except ImportError:
        pass
    else:
        short_vectors = _speedups.short_vectors
        value_histogram = _speedups.value_histogram
        BACKEND = "cython"

__all__ = ["BACKEND", "short_vectors", "value_histogram"]
