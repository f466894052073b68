"""Tool drivers: run a swap router on a benchmark bundle, emit a result bundle."""

from __future__ import annotations

from .router import route_circuit
from .runner import TOOLS, run_tool
from .version import __version__

__all__ = ["TOOLS", "__version__", "route_circuit", "run_tool"]
