"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``GRADED_WORKBENCH_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("GRADED_WORKBENCH_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

rref_rows = _impl.rref_rows
reduce_against = _impl.reduce_against
matvec = _impl.matvec
make_primitive = _impl.make_primitive

__all__ = ["BACKEND", "rref_rows", "reduce_against", "matvec", "make_primitive"]
