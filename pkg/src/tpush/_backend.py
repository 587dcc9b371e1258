"""Select the compiled kernel module or the pure-Python fallback at import."""

import os

if os.environ.get("TPUSH_PURE") == "1":
    from . import _core_py as core
else:
    try:
        from . import _core as core
    except ImportError:
        from . import _core_py as core

BACKEND = core.BACKEND

__all__ = ["core", "BACKEND"]
