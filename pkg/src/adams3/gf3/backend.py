"""Kernel selection: compiled extension if available, pure Python otherwise.

``ADAMS3_GF3_BACKEND=py`` or ``=cy`` forces a backend (``cy`` errors out if
the extension was not built).  Both kernels implement the same contract and
produce identical output; ``benchmarks/bench_gf3.py`` compares their speed.
"""

from __future__ import annotations

import os

from . import _kernel_py

_forced = os.environ.get("ADAMS3_GF3_BACKEND", "").strip().lower()

if _forced == "py":
    _impl = _kernel_py
    BACKEND = "py"
elif _forced == "cy":
    from . import _kernel_cy as _impl  # type: ignore[no-redef]

    BACKEND = "cy"
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[no-redef]

        BACKEND = "cy"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "py"

rref_rows = _impl.rref
