"""Minimum swap counts by exhaustive search.

Two independent routes. `exact_min_swaps` runs iterative-deepening DFS with
lazily bound qubit positions: a program qubit gets pinned to a physical seat
only when a gate needs it, so one search covers every initial placement at
once. `brute_force_min_swaps` instead enumerates complete initial placements
and floods outward one swap at a time. They share nothing but the data
types, which is the point: agreement is evidence.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .graphs import (
    Circuit,
    CouplingGraph,
    Gate,
    Mapping,
    QubikosError,
    build_dependency_dag,
)

Pair = tuple[int, int]


@dataclass(frozen=True)
class OracleResult:
    status: str  # "optimal" | "exceeds_budget" | "resources_exhausted"
    swaps: int | None
    explored: int
    witness_mapping: Mapping | None = None
    witness_answer: Circuit | None = None


class _Exhausted(Exception):
    pass


def exact_min_swaps(
    coupling: CouplingGraph,
    circuit: Circuit,
    budget: int,
    *,
    state_cap: int = 10_000_000,
    time_limit: float = 60.0,
    want_witness: bool = False,
) -> OracleResult:
    """Fewest swaps that route the circuit on the coupling graph, over all
    initial placements, or proof that more than `budget` are needed.

    Deepens the swap budget k = 0, 1, ... and exhausts each level. Within a
    level, executable gates are executed greedily (free and never harmful),
    so branching happens only on seat bindings and swap choices. A state
    that exhausted its level is remembered with that level, which carries
    the failure proof into later, deeper iterations.
    """
    if circuit.num_qubits > coupling.num_qubits:
        raise QubikosError("circuit has more qubits than the device")
    gates = circuit.gates
    num_gates = len(gates)
    n = coupling.num_qubits
    if num_gates == 0:
        return OracleResult(
            "optimal", 0, 0, Mapping.identity(n), Circuit(n, ()) if want_witness else None
        )
    dag = build_dependency_dag(circuit)
    parent_masks = [0] * num_gates
    for i, parents in enumerate(dag.parents):
        for p in parents:
            parent_masks[i] |= 1 << p
    gates_ab = [(g.a, g.b) for g in gates]
    qubit_gate_masks = [0] * circuit.num_qubits
    for i, (a, b) in enumerate(gates_ab):
        qubit_gate_masks[a] |= 1 << i
        qubit_gate_masks[b] |= 1 << i
    dist = coupling.distances()
    edges = coupling.edges
    full_mask = (1 << num_gates) - 1
    deadline = time.monotonic() + time_limit
    explored = 0
    # state -> highest remaining-swap level proven fruitless
    failed: dict[tuple, int] = {}

    def closure(bind: list[int], exec_mask: int) -> int:
        changed = True
        while changed:
            changed = False
            pend = full_mask & ~exec_mask
            while pend:
                bit = pend & -pend
                pend ^= bit
                i = bit.bit_length() - 1
                if (exec_mask & parent_masks[i]) != parent_masks[i]:
                    continue
                a, b = gates_ab[i]
                pa = bind[a]
                if pa < 0:
                    continue
                pb = bind[b]
                if pb < 0:
                    continue
                if dist[pa][pb] == 1:
                    exec_mask |= bit
                    changed = True
        return exec_mask

    def search(
        bind: list[int], prog_at: list[int], exec_mask: int, left: int, trace: list
    ) -> bool:
        nonlocal explored
        explored += 1
        if explored > state_cap:
            raise _Exhausted
        if explored % 1024 == 0 and time.monotonic() > deadline:
            raise _Exhausted
        exec_mask = closure(bind, exec_mask)
        if exec_mask == full_mask:
            return True
        key = (tuple(bind), exec_mask)
        if failed.get(key, -1) >= left:
            return False
        # every pending pinned pair still needs dist-1 swaps of its own
        h = 0
        pend = full_mask & ~exec_mask
        while pend:
            bit = pend & -pend
            pend ^= bit
            a, b = gates_ab[bit.bit_length() - 1]
            pa, pb = bind[a], bind[b]
            if pa >= 0 and pb >= 0:
                d = dist[pa][pb] - 1
                if d > h:
                    h = d
        if h > left:
            if failed.get(key, -1) < h - 1:
                failed[key] = h - 1
            return False

        def give_up() -> bool:
            if failed.get(key, -1) < left:
                failed[key] = left
            return False

        # bind the first ready gate that lacks a seat, if any
        pend = full_mask & ~exec_mask
        while pend:
            bit = pend & -pend
            pend ^= bit
            i = bit.bit_length() - 1
            if (exec_mask & parent_masks[i]) != parent_masks[i]:
                continue
            a, b = gates_ab[i]
            if bind[a] >= 0 and bind[b] >= 0:
                continue
            if bind[a] < 0 and bind[b] < 0:
                free = [s for s in range(n) if prog_at[s] < 0]
                for s1 in free:
                    row = dist[s1]
                    mates = sorted(
                        (s2 for s2 in free if s2 != s1 and row[s2] - 1 <= left),
                        key=lambda s2: (row[s2], s2),
                    )
                    bind[a] = s1
                    prog_at[s1] = a
                    trace.append(("bind", a, s1, exec_mask))
                    for s2 in mates:
                        bind[b] = s2
                        prog_at[s2] = b
                        trace.append(("bind", b, s2, exec_mask))
                        if search(bind, prog_at, exec_mask, left, trace):
                            return True
                        trace.pop()
                        prog_at[s2] = -1
                        bind[b] = -1
                    trace.pop()
                    prog_at[s1] = -1
                    bind[a] = -1
                return give_up()
            q, p = (a, bind[b]) if bind[a] < 0 else (b, bind[a])
            row = dist[p]
            seats = sorted(
                (s for s in range(n) if prog_at[s] < 0 and row[s] - 1 <= left),
                key=lambda s: (row[s], s),
            )
            for s in seats:
                bind[q] = s
                prog_at[s] = q
                trace.append(("bind", q, s, exec_mask))
                if search(bind, prog_at, exec_mask, left, trace):
                    return True
                trace.pop()
                prog_at[s] = -1
                bind[q] = -1
            return give_up()
        if left == 0:
            return give_up()
        pend = full_mask & ~exec_mask
        for u, v in edges:
            qu, qv = prog_at[u], prog_at[v]
            if qu < 0 and qv < 0:
                continue
            # a swap between two finished qubits changes nothing observable
            live = False
            if qu >= 0 and pend & qubit_gate_masks[qu]:
                live = True
            if qv >= 0 and pend & qubit_gate_masks[qv]:
                live = True
            if not live:
                continue
            if qu >= 0:
                bind[qu] = v
            if qv >= 0:
                bind[qv] = u
            prog_at[u], prog_at[v] = qv, qu
            trace.append(("swap", u, v, exec_mask))
            if search(bind, prog_at, exec_mask, left - 1, trace):
                return True
            trace.pop()
            prog_at[u], prog_at[v] = qu, qv
            if qu >= 0:
                bind[qu] = u
            if qv >= 0:
                bind[qv] = v
        return give_up()

    try:
        for k in range(budget + 1):
            trace: list = []
            if search([-1] * circuit.num_qubits, [-1] * n, 0, k, trace):
                if not want_witness:
                    return OracleResult("optimal", k, explored)
                f0, swaps = _witness_from_trace(coupling, trace)
                answer = _witness_answer(coupling, circuit, f0, swaps)
                return OracleResult("optimal", k, explored, f0, answer)
        return OracleResult("exceeds_budget", None, explored)
    except _Exhausted:
        return OracleResult("resources_exhausted", None, explored)


def _witness_from_trace(
    coupling: CouplingGraph, trace: list
) -> tuple[Mapping, list[Pair]]:
    """Turn bind/swap events into an initial mapping and swap list. A qubit
    bound to seat p after some swaps started wherever those swaps pulled p
    from, so each binding is traced back through the swaps so far."""
    n = coupling.num_qubits
    cur_of_orig = list(range(n))
    orig_of_cur = list(range(n))
    f0: dict[int, int] = {}
    swaps: list[Pair] = []
    for event in trace:
        if event[0] == "bind":
            _, q, p, _ = event
            f0[q] = orig_of_cur[p]
        else:
            _, u, v, _ = event
            swaps.append((u, v))
            ou, ov = orig_of_cur[u], orig_of_cur[v]
            cur_of_orig[ou], cur_of_orig[ov] = v, u
            orig_of_cur[u], orig_of_cur[v] = ov, ou
    free = sorted(set(range(n)) - set(f0.values()))
    out = []
    for q in range(n):
        out.append(f0[q] if q in f0 else free.pop(0))
    return Mapping(tuple(out)), swaps


def _witness_answer(
    coupling: CouplingGraph, circuit: Circuit, f0: Mapping, swaps: list[Pair]
) -> Circuit:
    """Replay: run every executable gate, then the next swap, until done.
    Executing eagerly can only run gates earlier than the search did, which
    never blocks anything later."""
    dag = build_dependency_dag(circuit)
    f = f0
    done = [False] * len(circuit.gates)
    out: list[Pair] = []
    kinds: list[str] = []

    def flush() -> None:
        changed = True
        while changed:
            changed = False
            for i, g in enumerate(circuit.gates):
                if done[i] or any(not done[j] for j in dag.parents[i]):
                    continue
                pa, pb = f.physical(g.a), f.physical(g.b)
                if coupling.has_edge(min(pa, pb), max(pa, pb)):
                    out.append((pa, pb))
                    kinds.append("cx")
                    done[i] = True
                    changed = True

    flush()
    for edge in swaps:
        out.append(edge)
        kinds.append("swap")
        f = f.apply_swap(coupling, (min(edge), max(edge)))
        flush()
    if not all(done):
        raise QubikosError("witness replay failed to execute every gate")
    return Circuit.from_pairs(coupling.num_qubits, out, kinds)


def brute_force_min_swaps(
    coupling: CouplingGraph,
    circuit: Circuit,
    budget: int,
    *,
    greedy_closure: bool = True,
) -> OracleResult:
    """Same answer as `exact_min_swaps`, found the plodding way: try every
    complete initial placement, then breadth-first over swap sequences.

    With `greedy_closure=False` gate executions become explicit zero-cost
    moves instead of being folded in after every swap; the reachable counts
    must not change, which is checkable on tiny instances.
    """
    import itertools

    n = coupling.num_qubits
    if circuit.num_qubits > n:
        raise QubikosError("circuit has more qubits than the device")
    if math.perm(n, circuit.num_qubits) > 1_000_000:
        raise QubikosError("initial placement enumeration is too large for brute force")
    gates = circuit.gates
    edge_set = set(coupling.edges)

    def executable(phys_of: tuple[int, ...], done: frozenset[int]) -> list[int]:
        out = []
        for i, g in enumerate(gates):
            if i in done:
                continue
            blocked = any(
                j not in done
                for j in range(i)
                if {gates[j].a, gates[j].b} & {g.a, g.b}
            )
            if blocked:
                continue
            p = (phys_of[g.a], phys_of[g.b])
            if (min(p), max(p)) in edge_set:
                out.append(i)
        return out

    def run_closure(phys_of: tuple[int, ...], done: frozenset[int]) -> frozenset[int]:
        done = set(done)
        while True:
            ready = executable(phys_of, frozenset(done))
            if not ready:
                return frozenset(done)
            done.update(ready)

    def zero_cost_expand(states: list) -> list:
        # all states reachable by executing gates one at a time, no swaps
        seen_local = set(states)
        out = list(states)
        stack = list(states)
        while stack:
            phys_of, done = stack.pop()
            for i in executable(phys_of, done):
                nxt = (phys_of, done | {i})
                if nxt not in seen_local:
                    seen_local.add(nxt)
                    out.append(nxt)
                    stack.append(nxt)
        return out

    def settle(phys_of: tuple[int, ...], done: frozenset[int]) -> list:
        if greedy_closure:
            return [(phys_of, run_closure(phys_of, done))]
        return zero_cost_expand([(phys_of, done)])

    def swapped(phys_of: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
        out = list(phys_of)
        for q, p in enumerate(out):
            if p == u:
                out[q] = v
            elif p == v:
                out[q] = u
        return tuple(out)

    target = frozenset(range(len(gates)))
    seen: set = set()
    layer: list = []
    for perm in itertools.permutations(range(n), circuit.num_qubits):
        for state in settle(perm, frozenset()):
            if state not in seen:
                seen.add(state)
                layer.append(state)
    for k in range(budget + 1):
        for _, done in layer:
            if done == target:
                return OracleResult("optimal", k, len(seen))
        if k == budget:
            break
        nxt = []
        for phys_of, done in layer:
            for u, v in coupling.edges:
                moved = swapped(phys_of, u, v)
                for state in settle(moved, done):
                    if state not in seen:
                        seen.add(state)
                        nxt.append(state)
        layer = nxt
    return OracleResult("exceeds_budget", None, len(seen))
