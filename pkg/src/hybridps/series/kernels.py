"""Select the truncated-product kernel at import time.

The compiled extension is preferred; set ``HYBRIDPS_PURE_PYTHON=1`` to
force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
trunc_mul = _kernels_py.trunc_mul

if not os.environ.get("HYBRIDPS_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        trunc_mul = _compiled.trunc_mul
        BACKEND = "cython"

__all__ = ["trunc_mul", "BACKEND"]
