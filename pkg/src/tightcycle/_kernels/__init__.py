"""Hot loops: compiled core when available, numpy/Python fallback otherwise.

Set ``TIGHTCYCLE_PURE=1`` to force the fallback (used by the benchmark and by
the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _fallback

fallback = _fallback

if os.environ.get("TIGHTCYCLE_PURE", "") not in ("", "0"):
    compiled = None
else:
    try:
        from . import _core as compiled
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else _fallback
BACKEND = "cython" if compiled is not None else "python"

boundary_minima = impl.boundary_minima
sigma_expand = impl.sigma_expand
sweep_profile = impl.sweep_profile
bfs_order = impl.bfs_order
MAX_EXHAUSTIVE = impl.MAX_EXHAUSTIVE

__all__ = [
    "BACKEND",
    "MAX_EXHAUSTIVE",
    "bfs_order",
    "boundary_minima",
    "compiled",
    "fallback",
    "sigma_expand",
    "sweep_profile",
]
