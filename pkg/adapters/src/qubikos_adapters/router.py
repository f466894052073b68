"""Reference swap router in the look-ahead heuristic family.

Each trial places the program on a fresh random layout, then alternates
between executing every dependency-free gate whose endpoints are adjacent
and inserting the swap that most reduces the summed endpoint distance of
the blocked front (plus a discounted look-ahead window). A forced-march
escape moves the oldest blocked gate one step along a shortest path
whenever the heuristic stalls, so every trial terminates. The best trial
by swap count wins.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from qubikos import Circuit, CouplingGraph, DependencyDag, Mapping

LOOKAHEAD_WINDOW = 20
LOOKAHEAD_WEIGHT = 0.5


@dataclass(frozen=True)
class RoutedCircuit:
    transpiled: Circuit
    initial_layout: Mapping
    swap_count: int
    trial_counts: tuple[int, ...]


def _trial_seed(seed: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _route_once(
    coupling: CouplingGraph,
    circuit: Circuit,
    dist: list[list[int]],
    dag: DependencyDag,
    rng: random.Random,
    start: list[int],
) -> tuple[list[tuple[int, int]], list[str], Mapping, int, list[int]]:
    n = coupling.num_qubits
    pos = list(start)  # pos[program] = physical seat
    initial = Mapping(tuple(pos))
    inv = [0] * n
    for q, p in enumerate(pos):
        inv[p] = q

    waiting = [len(p) for p in dag.parents]
    front = {g for g in range(len(circuit.gates)) if waiting[g] == 0}
    pairs: list[tuple[int, int]] = []
    kinds: list[str] = []
    swaps = 0
    stall = 0
    stall_limit = 2 * n + 8

    def flush() -> bool:
        ran = False
        progress = True
        while progress:
            progress = False
            for g in sorted(front):
                gate = circuit.gates[g]
                pa, pb = pos[gate.a], pos[gate.b]
                if coupling.has_edge(pa, pb):
                    pairs.append((pa, pb))
                    kinds.append("cx")
                    front.remove(g)
                    for c in dag.children[g]:
                        waiting[c] -= 1
                        if waiting[c] == 0:
                            front.add(c)
                    ran = progress = True
                    break
        return ran

    def apply_swap(u: int, v: int) -> None:
        nonlocal swaps
        qu, qv = inv[u], inv[v]
        pos[qu], pos[qv] = v, u
        inv[u], inv[v] = qv, qu
        pairs.append((u, v))
        kinds.append("swap")
        swaps += 1

    while front:
        if flush():
            stall = 0
            continue

        if stall >= stall_limit:
            # forced march: walk the oldest blocked gate one step closer
            g = min(front)
            gate = circuit.gates[g]
            pa, pb = pos[gate.a], pos[gate.b]
            step = min(coupling.neighbors(pa), key=lambda q: dist[q][pb])
            apply_swap(pa, step)
            continue
        stall += 1

        front_gates = [circuit.gates[g] for g in sorted(front)]
        # gates still waiting on parents, in label order, capped at the window
        horizon = []
        for g in range(min(front) + 1, len(circuit.gates)):
            if waiting[g] > 0:
                horizon.append(circuit.gates[g])
                if len(horizon) == LOOKAHEAD_WINDOW:
                    break

        candidates: set[tuple[int, int]] = set()
        for gate in front_gates:
            for p in (pos[gate.a], pos[gate.b]):
                for q in coupling.neighbors(p):
                    candidates.add((p, q) if p < q else (q, p))

        def score(edge: tuple[int, int]) -> float:
            u, v = edge
            qu, qv = inv[u], inv[v]
            pos[qu], pos[qv] = v, u
            total = 0.0
            for gate in front_gates:
                total += dist[pos[gate.a]][pos[gate.b]]
            for gate in horizon:
                total += LOOKAHEAD_WEIGHT * dist[pos[gate.a]][pos[gate.b]]
            pos[qu], pos[qv] = u, v
            return total

        scored = [(score(e), e) for e in sorted(candidates)]
        best = min(s for s, _ in scored)
        u, v = rng.choice([e for s, e in scored if s == best])
        apply_swap(u, v)

    return pairs, kinds, initial, swaps, pos


def route_circuit(
    coupling: CouplingGraph, circuit: Circuit, trials: int = 1, seed: int = 0
) -> RoutedCircuit:
    """Route the circuit onto the device; keep the best of `trials` attempts.

    Trial t always reruns with the same derived seed regardless of the total
    trial count, so a larger trial budget can only improve the result.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if circuit.num_qubits > coupling.num_qubits:
        raise ValueError("circuit uses more qubits than the device offers")
    n = coupling.num_qubits
    dist = coupling.distances()
    dag = DependencyDag(circuit)
    reverse = Circuit.from_pairs(
        n, [g.pair() for g in reversed(circuit.gates)], [g.kind for g in reversed(circuit.gates)]
    )
    reverse_dag = DependencyDag(reverse)
    best: tuple | None = None
    counts: list[int] = []
    for t in range(trials):
        rng = random.Random(_trial_seed(seed, t))
        # layout refinement: a forward and a backward pass walk the random
        # start toward a layout the circuit's opening actually wants
        pos = rng.sample(range(n), n)
        pos = _route_once(coupling, circuit, dist, dag, rng, pos)[4]
        pos = _route_once(coupling, reverse, dist, reverse_dag, rng, pos)[4]
        attempt = _route_once(coupling, circuit, dist, dag, rng, pos)
        counts.append(attempt[3])
        if best is None or attempt[3] < best[3]:
            best = attempt
    pairs, kinds, initial, swaps, _ = best
    transpiled = Circuit.from_pairs(coupling.num_qubits, pairs, kinds)
    return RoutedCircuit(
        transpiled=transpiled,
        initial_layout=initial,
        swap_count=swaps,
        trial_counts=tuple(counts),
    )
