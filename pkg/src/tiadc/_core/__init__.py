"""Inner-loop kernels with a compiled backend and a pure-Python fallback.

The Cython extension is used when it imports; otherwise (or when
``TIADC_PURE_PYTHON=1`` is set) the fallback in ``_fallback`` is used.
``BACKEND`` names the active choice.
"""

import os

from . import _fallback

if os.environ.get("TIADC_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

if _compiled is not None:
    ddsm_run = _compiled.ddsm_run
    ds2_run = _compiled.ds2_run
    BACKEND = "cython"
else:
    ddsm_run = _fallback.ddsm_run
    ds2_run = _fallback.ds2_run
    BACKEND = "python"


def backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _fallback}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found


__all__ = ["BACKEND", "backends", "ddsm_run", "ds2_run"]
