"""Kernel backend selection.

The enumeration inner loop exists twice: a compiled Cython extension
(``multicurves._speedups``) and a pure-Python twin
(``multicurves._speedups_py``) with identical semantics.  The compiled one
is picked at import when available; set ``MULTICURVES_KERNEL=pure`` or
``=compiled`` to force a backend.

Queries whose intermediate values could overflow signed 64-bit integers are
routed to the pure backend regardless of the selection (Python integers do
not overflow); see :func:`multicurves.orbits._plan_kernel`.
"""

from __future__ import annotations

import os

from . import _speedups_py as pure

try:
    from . import _speedups as compiled
except ImportError:
    compiled = None

_forced = os.environ.get("MULTICURVES_KERNEL")
if _forced == "pure":
    active = pure
elif _forced == "compiled":
    if compiled is None:
        raise ImportError(
            "MULTICURVES_KERNEL=compiled but the extension is not built; "
            "run: python setup.py build_ext --inplace"
        )
    active = compiled
elif _forced is None:
    active = compiled if compiled is not None else pure
else:
    raise ImportError(f"MULTICURVES_KERNEL={_forced!r} not understood")

BACKEND: str = active.BACKEND


def backends() -> dict:
    """Available kernel backends by name."""
    out = {"pure": pure}
    if compiled is not None:
        out["compiled"] = compiled
    return out
