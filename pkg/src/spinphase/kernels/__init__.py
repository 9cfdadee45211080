"""Hot numeric kernels with two interchangeable backends.

The numba-jitted path is the default; setting SPINPHASE_NO_NUMBA=1 (or any
truthy value) at import time selects the pure-numpy fallback.  Both backends
share the same contract, see numpy_backend.husimi_batch.
"""

import os

from . import numpy_backend

_FLAG = os.environ.get("SPINPHASE_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes")

if not _DISABLED:
    try:
        from . import numba_backend
        husimi_batch = numba_backend.husimi_batch
        BACKEND = "numba"
    except ImportError:
        husimi_batch = numpy_backend.husimi_batch
        BACKEND = "numpy"
else:
    husimi_batch = numpy_backend.husimi_batch
    BACKEND = "numpy"

__all__ = ["husimi_batch", "BACKEND", "numpy_backend"]
