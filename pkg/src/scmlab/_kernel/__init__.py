"""Kernel backend selection.

The compiled extension handles prime-field coefficients; the pure backend
handles everything (and is the only one that supports rationals).  Set
SCMLAB_KERNEL=pure to force the fallback.
"""

import os

from . import _pure

_forced = os.environ.get("SCMLAB_KERNEL", "").strip().lower()

_compiled = None
if _forced != "pure":
    try:
        from . import _core as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None
        if _forced == "compiled":
            raise


def backend_for(p: int):
    """Backend module for characteristic p (0 means rationals)."""
    if p and _compiled is not None:
        return _compiled
    return _pure


def compiled_available() -> bool:
    return _compiled is not None


def backend_names() -> dict:
    return {
        "compiled": getattr(_compiled, "BACKEND_NAME", None),
        "pure": _pure.BACKEND_NAME,
        "active_prime_field": backend_for(32003).BACKEND_NAME,
    }
