"""Stabilizer engine.  Kernels come from the compiled core when it is built,
otherwise from the numpy fallback; ``PSC_PURE_PYTHON=1`` forces the fallback."""

import os

if os.environ.get("PSC_PURE_PYTHON"):
    from . import _core_py as core
else:
    try:
        from . import _core as core
    except ImportError:  # extension not built
        from . import _core_py as core

from .state import StabilizerState  # noqa: E402

BACKEND = core.BACKEND

__all__ = ["StabilizerState", "core", "BACKEND"]
