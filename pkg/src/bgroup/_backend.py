"""Pick the enumeration kernels: compiled if importable, else pure Python.

Set BGROUP_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py

python_kernels = _kernels_py
compiled_kernels = None

if not os.environ.get("BGROUP_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = kernels.BACKEND


def get_kernels(name=None):
    """Kernels by name ("cython" or "python"); None means the default."""
    if name is None:
        return kernels
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("the compiled kernels are not built")
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")
