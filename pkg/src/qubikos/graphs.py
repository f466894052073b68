"""Core data model: coupling graphs, circuits, mappings, and the gate dependency DAG."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


class QubikosError(Exception):
    """Raised for invalid inputs or unsatisfiable construction requests."""


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    """Return the endpoints as an ordered pair (low, high)."""
    if u == v:
        raise QubikosError(f"self-loop edge ({u}, {v}) is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected connected device graph over physical qubits 0..num_qubits-1."""

    name: str
    num_qubits: int
    edges: tuple[tuple[int, int], ...]
    _adj: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        adj: dict[int, list[int]] = {p: [] for p in range(self.num_qubits)}
        for u, v in self.edges:
            e = normalize_edge(u, v)
            if e in seen:
                raise QubikosError(f"duplicate edge {e} in coupling graph {self.name!r}")
            if not (0 <= e[0] < self.num_qubits and 0 <= e[1] < self.num_qubits):
                raise QubikosError(f"edge {e} out of range for {self.num_qubits} qubits")
            seen.add(e)
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        object.__setattr__(self, "_adj", {p: tuple(sorted(ns)) for p, ns in adj.items()})
        if self.num_qubits > 0 and not self._connected():
            raise QubikosError(f"coupling graph {self.name!r} is not connected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for n in self._adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == self.num_qubits

    @classmethod
    def build(cls, name: str, num_qubits: int, edges) -> CouplingGraph:
        """Construct with edges normalized to sorted (low, high) pairs."""
        norm = sorted(normalize_edge(u, v) for u, v in edges)
        return cls(name=name, num_qubits=num_qubits, edges=tuple(norm))

    @classmethod
    def from_json_file(cls, path: str | Path) -> CouplingGraph:
        with open(path) as fh:
            doc = json.load(fh)
        for key in ("name", "num_qubits", "edges"):
            if key not in doc:
                raise QubikosError(f"coupling graph file {path} is missing key {key!r}")
        return cls.build(doc["name"], doc["num_qubits"], [tuple(e) for e in doc["edges"]])

    def to_json_file(self, path: str | Path) -> None:
        doc = {
            "name": self.name,
            "num_qubits": self.num_qubits,
            "edges": [list(e) for e in self.edges],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def neighbors(self, p: int) -> tuple[int, ...]:
        return self._adj[p]

    def degree(self, p: int) -> int:
        return len(self._adj[p])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and v in self._adj.get(u, ())

    def distances(self) -> list[list[int]]:
        """All-pairs shortest-path distances by BFS from every vertex."""
        n = self.num_qubits
        out = []
        for src in range(n):
            dist = [-1] * n
            dist[src] = 0
            queue = [src]
            for u in queue:
                for v in self._adj[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            out.append(dist)
        return out


@dataclass(frozen=True)
class Gate:
    """One two-qubit gate occurrence; label is its index within the circuit."""

    a: int
    b: int
    kind: str = "cx"
    label: int = 0

    def pair(self) -> tuple[int, int]:
        return normalize_edge(self.a, self.b)

    def touches(self, q: int) -> bool:
        return q == self.a or q == self.b


@dataclass(frozen=True)
class Circuit:
    """A sequence of two-qubit gate occurrences over qubits 0..num_qubits-1."""

    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        for i, g in enumerate(self.gates):
            if g.label != i:
                raise QubikosError(f"gate at position {i} has label {g.label}")
            if not (0 <= g.a < self.num_qubits and 0 <= g.b < self.num_qubits):
                raise QubikosError(f"gate {i} on ({g.a}, {g.b}) out of range")
            if g.a == g.b:
                raise QubikosError(f"gate {i} acts twice on qubit {g.a}")
            if g.kind not in ("cx", "swap"):
                raise QubikosError(f"gate {i} has unsupported kind {g.kind!r}")

    @classmethod
    def from_pairs(cls, num_qubits: int, pairs, kinds=None) -> Circuit:
        """Build a circuit from (a, b) pairs; kinds defaults to all cx."""
        pairs = list(pairs)
        if kinds is None:
            kinds = ["cx"] * len(pairs)
        gates = tuple(
            Gate(a=a, b=b, kind=k, label=i)
            for i, ((a, b), k) in enumerate(zip(pairs, kinds))
        )
        return cls(num_qubits=num_qubits, gates=gates)

    def __len__(self) -> int:
        return len(self.gates)

    def pairs(self) -> list[tuple[int, int]]:
        return [(g.a, g.b) for g in self.gates]

    def swap_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "swap")

    def inserted(self, position: int, pair: tuple[int, int], kind: str = "cx") -> Circuit:
        """Return a copy with a new gate at position; labels are reassigned."""
        if not (0 <= position <= len(self.gates)):
            raise QubikosError(f"insert position {position} out of range")
        seq = [(g.a, g.b, g.kind) for g in self.gates]
        seq.insert(position, (pair[0], pair[1], kind))
        return Circuit.from_pairs(self.num_qubits, [(a, b) for a, b, _ in seq], [k for _, _, k in seq])


@dataclass(frozen=True)
class InteractionGraph:
    """Undirected graph of qubit pairs that interact somewhere in a circuit."""

    num_qubits: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, num_qubits: int, edges) -> InteractionGraph:
        norm = sorted({normalize_edge(a, b) for a, b in edges})
        return cls(num_qubits=num_qubits, edges=tuple(norm))

    def degree_of(self, q: int) -> int:
        return sum(1 for e in self.edges if q in e)

    def degrees(self) -> list[int]:
        out = [0] * self.num_qubits
        for a, b in self.edges:
            out[a] += 1
            out[b] += 1
        return out

    def has_edge(self, a: int, b: int) -> bool:
        return normalize_edge(a, b) in set(self.edges)


def build_interaction_graph(circuit: Circuit) -> InteractionGraph:
    """Collect the distinct unordered qubit pairs used by the circuit's gates."""
    return InteractionGraph.from_edges(circuit.num_qubits, (g.pair() for g in circuit.gates))


class DependencyDag:
    """Gate-order constraints: gate i must run before gate j when they share a qubit.

    Nodes are gate labels. Immediate edges link consecutive gates on each qubit;
    ancestor queries answer reachability over those edges.
    """

    def __init__(self, circuit: Circuit):
        n = len(circuit.gates)
        self.num_gates = n
        parents: list[set[int]] = [set() for _ in range(n)]
        children: list[set[int]] = [set() for _ in range(n)]
        last_on: dict[int, int] = {}
        for g in circuit.gates:
            for q in (g.a, g.b):
                prev = last_on.get(q)
                if prev is not None:
                    parents[g.label].add(prev)
                    children[prev].add(g.label)
                last_on[q] = g.label
        self.parents = [tuple(sorted(s)) for s in parents]
        self.children = [tuple(sorted(s)) for s in children]
        self._anc: list[int] | None = None

    def edges(self) -> list[tuple[int, int]]:
        return [(p, c) for c, ps in enumerate(self.parents) for p in ps]

    def ancestor_masks(self) -> list[int]:
        """Bitmask of ancestors per gate; gate labels already form a topological order."""
        if self._anc is None:
            anc = [0] * self.num_gates
            for i in range(self.num_gates):
                m = 0
                for p in self.parents[i]:
                    m |= anc[p] | (1 << p)
                anc[i] = m
            self._anc = anc
        return self._anc

    def is_ancestor(self, i: int, j: int) -> bool:
        """True when gate i must complete before gate j."""
        return bool(self.ancestor_masks()[j] >> i & 1)


def build_dependency_dag(circuit: Circuit) -> DependencyDag:
    return DependencyDag(circuit)


@dataclass(frozen=True)
class Mapping:
    """Bijection from program qubits to physical qubits; phys_of[q] is q's location."""

    phys_of: tuple[int, ...]
    _prog_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.phys_of)
        if sorted(self.phys_of) != list(range(n)):
            raise QubikosError("mapping is not a bijection onto 0..n-1")
        inv = [0] * n
        for q, p in enumerate(self.phys_of):
            inv[p] = q
        object.__setattr__(self, "_prog_of", tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Mapping:
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, rng, n: int) -> Mapping:
        return cls(tuple(rng.sample(range(n), n)))

    def __len__(self) -> int:
        return len(self.phys_of)

    def physical(self, q: int) -> int:
        return self.phys_of[q]

    def program(self, p: int) -> int:
        return self._prog_of[p]

    def apply_swap(self, coupling: CouplingGraph, edge: tuple[int, int]) -> Mapping:
        """Exchange the programs held at the edge's endpoints; edge must be in the device."""
        u, v = edge
        if not coupling.has_edge(u, v):
            raise QubikosError(f"swap on ({u}, {v}) is not a coupling edge of {coupling.name!r}")
        a, b = self._prog_of[u], self._prog_of[v]
        phys = list(self.phys_of)
        phys[a], phys[b] = v, u
        return Mapping(tuple(phys))

    def maps_to_edge(self, coupling: CouplingGraph, a: int, b: int) -> bool:
        """True when program pair (a, b) lands on a coupling edge."""
        return coupling.has_edge(self.phys_of[a], self.phys_of[b])
