"""Backend selection for the adjointness kernels.

The compiled extension is used when it was built; otherwise, or when
``CHUKIT_PURE_PYTHON`` is set to a non-empty value, the pure-Python
implementation is used. Results are identical.
"""

import os

from . import _kernels_py

if os.environ.get("CHUKIT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "compiled"

allowed_matrix = _impl.allowed_matrix
first_violation = _impl.first_violation
