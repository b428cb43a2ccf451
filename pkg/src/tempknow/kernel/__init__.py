"""Row-recurrence kernel with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built; setting
``TEMPKNOW_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernel as python_backend
from .program import Program, compile_program

try:
    from . import _ckernel as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("TEMPKNOW_PURE_PYTHON"):
    backend = compiled_backend
else:
    backend = python_backend

__all__ = ["Program", "compile_program", "backend", "python_backend", "compiled_backend"]
