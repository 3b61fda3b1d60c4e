"""Kernel backend selection.

The hot enumeration loops live in a compiled Cython extension
(``hatguess._kernels``) with a pure-Python twin (``hatguess._pykernels``).
The compiled backend is used when it imported successfully; set
``HATGUESS_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and the cross-checking tests).
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("HATGUESS_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _pykernels

BACKEND: str = kernels.BACKEND

FOUND = _pykernels.FOUND
EXHAUSTED = _pykernels.EXHAUSTED
ABORTED = _pykernels.ABORTED


def available_backends() -> dict[str, object]:
    """All importable kernel backends, keyed by name."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _kernels

        out["c"] = _kernels
    except ImportError:
        pass
    return out
