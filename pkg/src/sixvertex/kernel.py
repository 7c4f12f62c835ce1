"""Select the enumeration kernel at import time.

The compiled extension is used when it was built; setting
``SIXVERTEX_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("SIXVERTEX_PURE_PYTHON") != "1":
    try:
        from . import _kernel as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

type_histogram = _impl.type_histogram
count = _impl.count
iter_asms = _kernel_py.iter_asms
asm_type_counts = _kernel_py.asm_type_counts


def backends():
    """All available kernels keyed by name (for benchmarking)."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel as compiled
    except ImportError:
        pass
    else:
        out["compiled"] = compiled
    return out
