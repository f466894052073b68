"""Device topologies: procedural families and bundled named devices.

Procedural families:
  line-k       path of k qubits, k-1 edges
  grid-RxC     R by C lattice, R(C-1) + C(R-1) edges
  heavy-hex-d  heavy-hexagon patch for odd d >= 3: d rows of 2d+1 columns
               (row 0 drops its last column, row d-1 its first) joined by
               (d+1)/2 rung qubits per row gap, at columns 0,4,8,... in even
               gaps and 2,6,10,... in odd gaps; degree never exceeds 3.

Named devices (aspen4, sycamore54, rochester53, eagle127) load from data/
JSON files; see README for the published sources they were frozen from.
"""

from __future__ import annotations

import re
from pathlib import Path

from .graphs import CouplingGraph, QubikosError

DATA_DIR = Path(__file__).parent / "data"

NAMED_DEVICES = ("aspen4", "sycamore54", "rochester53", "eagle127")

_LINE = re.compile(r"^line-(\d+)$")
_GRID = re.compile(r"^grid-(\d+)x(\d+)$")
_HEX = re.compile(r"^heavy-hex-(\d+)$")


def line(k: int) -> CouplingGraph:
    if k < 2:
        raise QubikosError("line-k needs k >= 2")
    return CouplingGraph.build(f"line-{k}", k, [(i, i + 1) for i in range(k - 1)])


def grid(rows: int, cols: int) -> CouplingGraph:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise QubikosError("grid-RxC needs at least two qubits")
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return CouplingGraph.build(f"grid-{rows}x{cols}", rows * cols, edges)


def heavy_hex(d: int) -> CouplingGraph:
    if d < 3 or d % 2 == 0:
        raise QubikosError("heavy-hex-d needs odd d >= 3")
    width = 2 * d + 1
    row_cols = [list(range(width)) for _ in range(d)]
    row_cols[0] = list(range(width - 1))
    row_cols[d - 1] = list(range(1, width))
    rung_cols = [
        list(range(0, width - 1, 4)) if g % 2 == 0 else list(range(2, width + 1, 4))
        for g in range(d - 1)
    ]
    ids: dict[tuple[str, int, int], int] = {}
    counter = 0
    for r in range(d):
        for c in row_cols[r]:
            ids[("row", r, c)] = counter
            counter += 1
        if r < d - 1:
            for c in rung_cols[r]:
                ids[("rung", r, c)] = counter
                counter += 1
    edges = []
    for r in range(d):
        cols = row_cols[r]
        for c0, c1 in zip(cols, cols[1:]):
            edges.append((ids[("row", r, c0)], ids[("row", r, c1)]))
    for g in range(d - 1):
        for c in rung_cols[g]:
            edges.append((ids[("row", g, c)], ids[("rung", g, c)]))
            edges.append((ids[("rung", g, c)], ids[("row", g + 1, c)]))
    return CouplingGraph.build(f"heavy-hex-{d}", counter, edges)


def make_architecture(spec: str) -> CouplingGraph:
    """Resolve an architecture name to its coupling graph.

    Accepts the procedural families (line-k, grid-RxC, heavy-hex-d) and the
    bundled named devices. Raises QubikosError for anything else.
    """
    m = _LINE.match(spec)
    if m:
        return line(int(m.group(1)))
    m = _GRID.match(spec)
    if m:
        return grid(int(m.group(1)), int(m.group(2)))
    m = _HEX.match(spec)
    if m:
        return heavy_hex(int(m.group(1)))
    if spec in NAMED_DEVICES:
        return CouplingGraph.from_json_file(DATA_DIR / f"{spec}.json")
    raise QubikosError(
        f"unknown architecture {spec!r}; expected line-k, grid-RxC, heavy-hex-d, "
        f"or one of {', '.join(NAMED_DEVICES)}"
    )


def resolve_architecture(spec: str) -> CouplingGraph:
    """Like make_architecture but also accepts a path to a coupling JSON file."""
    p = Path(spec)
    if p.suffix == ".json" or p.is_file():
        return CouplingGraph.from_json_file(p)
    return make_architecture(spec)


def list_architectures() -> list[str]:
    """Names shown by the CLI; procedural families are listed as patterns."""
    return ["line-<k>", "grid-<R>x<C>", "heavy-hex-<d>", *NAMED_DEVICES]
