"""Kernel backend selection.

The compiled extension is used when it is importable; otherwise the
pure-Python implementation is used.  Setting ``TRACELOGIC_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _kernels_py

python_backend = _kernels_py
compiled_backend = None

if not os.environ.get("TRACELOGIC_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if backend is compiled_backend else "python"

next_step = backend.next_step
until = backend.until
release = backend.release
