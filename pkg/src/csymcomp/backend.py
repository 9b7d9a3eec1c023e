"""Kernel backend selection.

The compiled Cython extension is preferred when present; the pure-numpy
fallback is used otherwise.  ``CSYMCOMP_BACKEND=python`` or
``CSYMCOMP_BACKEND=compiled`` forces a choice (the latter raises if the
extension is missing).
"""

from __future__ import annotations

import os

_forced = os.environ.get("CSYMCOMP_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _forced == "compiled":
    from . import _kernels as _impl  # type: ignore[no-redef]

    BACKEND = "compiled"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

cauchy_product = _impl.cauchy_product
power_columns = _impl.power_columns
reciprocal = _impl.reciprocal


def backend_name() -> str:
    return BACKEND
