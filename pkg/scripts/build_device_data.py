"""Regenerate the bundled device topology files in src/qubikos/data/.

Sources the edge lists were frozen from:
  aspen4      Rigetti Aspen-4 16-qubit lattice: two octagonal rings joined by
              two rungs. Ring qubits 0-7 and 8-15 (Rigetti's 10-17 renumbered),
              cross edges (1,14) and (2,13), as published in pyQuil device docs.
  sycamore54  Google Sycamore 54-qubit diamond: grid qubits at rows 0-9 with
              column spans 5-6 / 4-7 / 3-8 / 2-9 / 1-9 / 0-8 / 1-7 / 2-6 /
              3-5 / 4-4 (cirq device layout), numbered row-major; edges join
              orthogonal grid neighbors.
  rochester53 IBM Q Rochester 53-qubit map, edge list as in Qiskit's
              FakeRochester backend snapshot.
  eagle127    Ideal IBM Eagle-style 127-qubit heavy-hex patch; identical to
              the procedural heavy-hex-7 family member.

Run from the repo root after an editable install:  python scripts/build_device_data.py
"""

from __future__ import annotations

from qubikos.architectures import DATA_DIR, heavy_hex
from qubikos.graphs import CouplingGraph


def aspen4() -> CouplingGraph:
    ring_a = [(i, (i + 1) % 8) for i in range(8)]
    ring_b = [(8 + i, 8 + (i + 1) % 8) for i in range(8)]
    return CouplingGraph.build("aspen4", 16, ring_a + ring_b + [(1, 14), (2, 13)])


def sycamore54() -> CouplingGraph:
    spans = {0: (5, 6), 1: (4, 7), 2: (3, 8), 3: (2, 9), 4: (1, 9),
             5: (0, 8), 6: (1, 7), 7: (2, 6), 8: (3, 5), 9: (4, 4)}
    ids: dict[tuple[int, int], int] = {}
    for r in sorted(spans):
        lo, hi = spans[r]
        for c in range(lo, hi + 1):
            ids[(r, c)] = len(ids)
    edges = []
    for (r, c), i in ids.items():
        if (r, c + 1) in ids:
            edges.append((i, ids[(r, c + 1)]))
        if (r + 1, c) in ids:
            edges.append((i, ids[(r + 1, c)]))
    return CouplingGraph.build("sycamore54", len(ids), edges)


def rochester53() -> CouplingGraph:
    edges = [
        (0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 6),
        (5, 9), (6, 13),
        (7, 8), (8, 9), (9, 10), (10, 11), (11, 12), (12, 13), (13, 14), (14, 15),
        (7, 16), (11, 17), (15, 18),
        (16, 19), (17, 23), (18, 27),
        (19, 20), (20, 21), (21, 22), (22, 23), (23, 24), (24, 25), (25, 26), (26, 27),
        (21, 28), (25, 29),
        (28, 32), (29, 36),
        (30, 31), (31, 32), (32, 33), (33, 34), (34, 35), (35, 36), (36, 37), (37, 38),
        (30, 39), (34, 40), (38, 41),
        (39, 42), (40, 46), (41, 50),
        (42, 43), (43, 44), (44, 45), (45, 46), (46, 47), (47, 48), (48, 49), (49, 50),
        (44, 51), (48, 52),
    ]
    return CouplingGraph.build("rochester53", 53, edges)


def eagle127() -> CouplingGraph:
    g = heavy_hex(7)
    return CouplingGraph.build("eagle127", g.num_qubits, g.edges)


def main() -> None:
    DATA_DIR.mkdir(exist_ok=True)
    for builder in (aspen4, sycamore54, rochester53, eagle127):
        graph = builder()
        path = DATA_DIR / f"{graph.name}.json"
        graph.to_json_file(path)
        print(f"{path}  qubits={graph.num_qubits}  edges={len(graph.edges)}")


if __name__ == "__main__":
    main()
