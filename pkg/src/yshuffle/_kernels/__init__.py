"""Hot polynomial kernels: compiled extension when available, pure Python otherwise.

Set ``YSH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("YSH_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = "compiled" if _active is compiled_backend else "python"
FIELD_BITS = python_backend.FIELD_BITS
FIELD_MASK = python_backend.FIELD_MASK

mul = _active.mul
add_scaled = _active.add_scaled
prune = _active.prune
scale = _active.scale
relabel = _active.relabel
relabel_accumulate = _active.relabel_accumulate
split_var = _active.split_var
max_field = _active.max_field
monomial_degree = _active.monomial_degree

__all__ = [
    "BACKEND",
    "FIELD_BITS",
    "FIELD_MASK",
    "add_scaled",
    "compiled_backend",
    "max_field",
    "monomial_degree",
    "mul",
    "prune",
    "python_backend",
    "relabel",
    "relabel_accumulate",
    "scale",
    "split_var",
]
