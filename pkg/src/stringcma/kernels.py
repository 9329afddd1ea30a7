"""Kernel selection: the compiled extension when built, the pure-Python version otherwise.

Set ``STRINGCMA_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_fast = None
if os.environ.get("STRINGCMA_PURE") != "1":
    try:
        from . import _kernels as _fast
        BACKEND = "cython"
    except ImportError:
        _fast = None


def rank(rows, ncols):
    if _fast is not None:
        try:
            return _fast.rank(rows, ncols)
        except OverflowError:
            pass
    return _kernels_py.rank(rows, ncols)
