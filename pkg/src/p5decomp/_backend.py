"""Select the flow kernel: compiled ``_flowcore`` if importable, else ``_flowpy``.

Set ``P5DECOMP_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _flowpy

if os.environ.get("P5DECOMP_BACKEND", "").lower() == "python":
    FlowGraph = _flowpy.FlowGraph
    BACKEND = "python"
else:
    try:
        from ._flowcore import FlowGraph  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        FlowGraph = _flowpy.FlowGraph
        BACKEND = "python"

__all__ = ["FlowGraph", "BACKEND"]
