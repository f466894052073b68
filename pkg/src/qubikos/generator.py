"""Benchmark instances with a known-optimal swap count.

An instance is a program circuit, an answer circuit that routes it, and the
bookkeeping connecting them. The program circuit is a chain of sections, each
built so that its gates cannot all sit on the device at once; one swap right
before each section's special gate fixes that, and the dependency chains
forced by the gate order make the n swaps of n sections unavoidable. Padding
gates then grow the circuit to a requested size without touching any of it:
each pad is executable under the mapping that governs its slot, and is tied
by shared qubits into its section's dependency window.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass

from .backbone import connect_section, order_section
from .graphs import Circuit, CouplingGraph, Mapping, QubikosError
from .sections import build_section_graph, select_swap_edge

Pair = tuple[int, int]


@dataclass(frozen=True)
class BenchmarkInstance:
    """A generated benchmark: program circuit, routed answer, and the claim
    that `optimal_swaps` is exact."""

    coupling: CouplingGraph
    circuit: Circuit
    answer: Circuit
    initial_mapping: Mapping
    swap_schedule: tuple[tuple[int, Pair], ...]
    section_boundaries: tuple[int, ...]
    optimal_swaps: int
    seed: int

    def sections(self) -> list[tuple[int, int]]:
        """Half-open gate ranges of the program circuit, one per section.
        Gates past the last range are trailing padding."""
        out = []
        start = 0
        for end in self.section_boundaries:
            out.append((start, end))
            start = end
        return out

    def special_positions(self) -> list[int]:
        """Each section's final gate: the one its swap unlocks."""
        return [end - 1 for end in self.section_boundaries]


def _orient(pair: Pair, rng: random.Random) -> Pair:
    a, b = pair
    return (a, b) if rng.random() < 0.5 else (b, a)


def _assemble(
    coupling: CouplingGraph,
    prog_pairs: list[Pair],
    phys_pairs: list[Pair],
    boundaries: list[int],
    swap_edges: list[Pair],
    initial_mapping: Mapping,
    seed: int,
) -> BenchmarkInstance:
    special_at = {end - 1: j for j, end in enumerate(boundaries)}
    answer_pairs: list[Pair] = []
    answer_kinds: list[str] = []
    schedule: list[tuple[int, Pair]] = []
    for pos, phys in enumerate(phys_pairs):
        j = special_at.get(pos)
        if j is not None:
            schedule.append((len(answer_pairs), swap_edges[j]))
            answer_pairs.append(swap_edges[j])
            answer_kinds.append("swap")
        answer_pairs.append(phys)
        answer_kinds.append("cx")
    n = coupling.num_qubits
    return BenchmarkInstance(
        coupling=coupling,
        circuit=Circuit.from_pairs(n, prog_pairs),
        answer=Circuit.from_pairs(n, answer_pairs, answer_kinds),
        initial_mapping=initial_mapping,
        swap_schedule=tuple(schedule),
        section_boundaries=tuple(boundaries),
        optimal_swaps=len(swap_edges),
        seed=seed,
    )


def generate(
    coupling: CouplingGraph, num_sections: int, num_gates: int, seed: int
) -> BenchmarkInstance:
    """Build an instance with exactly `num_sections` forced swaps and exactly
    `num_gates` two-qubit gates. Raises when the backbone alone would exceed
    the gate budget, or when the coupling graph admits no hard section."""
    if num_sections < 0:
        raise QubikosError("section count must not be negative")
    rng = random.Random(seed)
    f0 = Mapping.random(rng, coupling.num_qubits)
    f = f0
    prog_pairs: list[Pair] = []
    phys_pairs: list[Pair] = []
    boundaries: list[int] = []
    swap_edges: list[Pair] = []
    prior: Pair | None = None
    for _ in range(num_sections):
        edge, target = select_swap_edge(coupling, f, rng)
        section = build_section_graph(coupling, f, edge, target)
        section = connect_section(coupling, f, section, prior)
        seq = order_section(section, prior, rng)
        for pair in seq[:-1]:
            a, b = _orient(pair, rng)
            prog_pairs.append((a, b))
            phys_pairs.append((f.physical(a), f.physical(b)))
        swap_edges.append(edge)
        f = f.apply_swap(coupling, edge)
        a, b = _orient(seq[-1], rng)
        prog_pairs.append((a, b))
        phys_pairs.append((f.physical(a), f.physical(b)))
        boundaries.append(len(prog_pairs))
        prior = seq[-1]
    if len(prog_pairs) > num_gates:
        raise QubikosError(
            f"the backbone needs {len(prog_pairs)} gates for {num_sections} "
            f"sections but the budget is {num_gates}"
        )
    instance = _assemble(
        coupling, prog_pairs, phys_pairs, boundaries, swap_edges, f0, seed
    )
    return pad_instance(instance, num_gates, rng)


def _pad_candidates(
    coupling: CouplingGraph,
    snapshots: list[Mapping],
    prog_pairs: list[Pair],
    boundaries: list[int],
    slot: int,
) -> list[Pair]:
    """Program pairs legal at a circuit slot: executable under the slot's
    governing mapping, sharing a qubit with a gate between the previous
    special gate and the slot, and with a gate between the slot and the
    section's own special gate. Trailing slots only need executability."""
    specials = [end - 1 for end in boundaries]
    k = bisect_left(specials, slot)
    mapping = snapshots[k]
    before: set[int] | None = None
    after: set[int] | None = None
    if k < len(specials):
        if k > 0:
            before = {q for p in prog_pairs[specials[k - 1] : slot] for q in p}
        after = {q for p in prog_pairs[slot : specials[k] + 1] for q in p}
    out = []
    for u, v in coupling.edges:
        a, b = mapping.program(u), mapping.program(v)
        if before is not None and not ({a, b} & before):
            continue
        if after is not None and not ({a, b} & after):
            continue
        out.append((a, b))
    return out


def pad_instance(
    instance: BenchmarkInstance, num_gates: int, rng: random.Random
) -> BenchmarkInstance:
    """Insert padding gates until the program circuit has `num_gates` gates.
    Slots are drawn uniformly, with a full enumeration fallback so padding
    never fails while any legal insertion exists."""
    if num_gates < len(instance.circuit.gates):
        raise QubikosError(
            f"cannot pad down: instance has {len(instance.circuit.gates)} "
            f"gates, requested {num_gates}"
        )
    coupling = instance.coupling
    prog_pairs = [(g.a, g.b) for g in instance.circuit.gates]
    phys_pairs = [(g.a, g.b) for g in instance.answer.gates if g.kind == "cx"]
    boundaries = list(instance.section_boundaries)
    swap_edges = [edge for _, edge in instance.swap_schedule]
    snapshots = [instance.initial_mapping]
    for edge in swap_edges:
        snapshots.append(snapshots[-1].apply_swap(coupling, edge))

    def insert(slot: int, pair: Pair) -> None:
        specials = [end - 1 for end in boundaries]
        mapping = snapshots[bisect_left(specials, slot)]
        a, b = _orient(pair, rng)
        prog_pairs.insert(slot, (a, b))
        phys_pairs.insert(slot, (mapping.physical(a), mapping.physical(b)))
        for i, end in enumerate(boundaries):
            if end > slot:
                boundaries[i] = end + 1

    while len(prog_pairs) < num_gates:
        placed = False
        for _ in range(64):
            slot = rng.randrange(len(prog_pairs) + 1)
            cands = _pad_candidates(
                coupling, snapshots, prog_pairs, boundaries, slot
            )
            if cands:
                insert(slot, cands[rng.randrange(len(cands))])
                placed = True
                break
        if not placed:
            combos = [
                (slot, pair)
                for slot in range(len(prog_pairs) + 1)
                for pair in _pad_candidates(
                    coupling, snapshots, prog_pairs, boundaries, slot
                )
            ]
            if not combos:
                raise QubikosError("no legal padding slot exists")
            insert(*combos[rng.randrange(len(combos))])
    return _assemble(
        coupling,
        prog_pairs,
        phys_pairs,
        boundaries,
        swap_edges,
        instance.initial_mapping,
        instance.seed,
    )
