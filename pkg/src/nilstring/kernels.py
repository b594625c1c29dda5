"""Kernel selection: compiled ``_core`` when importable, else ``_pycore``.

Set ``NILSTRING_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pycore

if os.environ.get("NILSTRING_PURE_PYTHON"):
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pycore

BACKEND = "compiled" if _impl is not _pycore else "python"

closure = _impl.closure
extend_hom = _impl.extend_hom

__all__ = ["BACKEND", "closure", "extend_hom"]
