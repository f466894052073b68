"""Per-section construction: pick a swap, then build an interaction graph that
cannot fit the device until that swap happens.

A section anchors at one endpoint of a chosen coupling edge. Its gate set
saturates the anchor's neighborhood and every higher-degree physical vertex,
and its special gate asks the anchor's program qubit to meet a vertex it only
reaches after the swap. Degree counting then rules out any embedding of the
gate set plus the special gate, while the gate set alone fits in place.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graphs import CouplingGraph, Mapping, QubikosError, normalize_edge


@dataclass(frozen=True)
class SectionGraph:
    """One section's swap choice plus its interaction edges as program pairs."""

    swap_edge: tuple[int, int]
    target: int
    anchor_phys: int
    anchor: int
    special: tuple[int, int]
    gates: tuple[tuple[int, int], ...]

    def with_gates(self, gates) -> SectionGraph:
        return replace(self, gates=tuple(gates))


def swap_candidates(coupling: CouplingGraph) -> list[tuple[tuple[int, int], int]]:
    """All (edge, target) choices where swapping the edge hands the endpoint
    away from the target a brand-new neighbor."""
    out = []
    for u, v in coupling.edges:
        for p_self, p_other in ((u, v), (v, u)):
            blocked = set(coupling.neighbors(p_self)) | {p_self}
            for t in coupling.neighbors(p_other):
                if t not in blocked:
                    out.append(((u, v), t))
    return sorted(out)


def select_swap_edge(
    coupling: CouplingGraph, mapping: Mapping, rng
) -> tuple[tuple[int, int], int]:
    """Pick uniformly among valid (edge, target) pairs; the anchor endpoint is
    the one not adjacent to the target."""
    if len(mapping) != coupling.num_qubits:
        raise QubikosError("mapping size does not match the coupling graph")
    cands = swap_candidates(coupling)
    if not cands:
        raise QubikosError(
            f"no swap on {coupling.name!r} can create a new adjacency; "
            "every pair of neighbors already shares all other neighbors"
        )
    return cands[rng.randrange(len(cands))]


def build_section_graph(
    coupling: CouplingGraph,
    mapping: Mapping,
    swap_edge: tuple[int, int],
    target: int,
) -> SectionGraph:
    """Build the section's gate set S and special gate for the chosen swap."""
    u, v = swap_edge
    if not coupling.has_edge(u, v):
        raise QubikosError(f"swap edge ({u}, {v}) is not in {coupling.name!r}")
    u_adj = coupling.has_edge(u, target)
    v_adj = coupling.has_edge(v, target)
    if u_adj == v_adj:
        raise QubikosError(
            f"target {target} must neighbor exactly one endpoint of ({u}, {v})"
        )
    anchor_phys, partner = (u, v) if v_adj else (v, u)
    d = coupling.degree(anchor_phys)
    gates = []
    for a, b in coupling.edges:
        if anchor_phys in (a, b) or max(coupling.degree(a), coupling.degree(b)) > d:
            gates.append(normalize_edge(mapping.program(a), mapping.program(b)))
    anchor = mapping.program(anchor_phys)
    special = normalize_edge(anchor, mapping.program(target))
    return SectionGraph(
        swap_edge=normalize_edge(u, v),
        target=target,
        anchor_phys=anchor_phys,
        anchor=anchor,
        special=special,
        gates=tuple(sorted(set(gates))),
    )


def counting_certificate(
    coupling: CouplingGraph, section: SectionGraph
) -> tuple[int, int]:
    """Degree tallies proving the section cannot embed: program qubits that
    interact with more than the anchor's physical degree, versus physical
    vertices that could host them. The construction makes the first exceed
    the second."""
    d = coupling.degree(section.anchor_phys)
    interaction: dict[int, int] = {}
    for a, b in (*section.gates, section.special):
        interaction[a] = interaction.get(a, 0) + 1
        interaction[b] = interaction.get(b, 0) + 1
    saturated = sum(1 for deg in interaction.values() if deg >= d + 1)
    capacity = sum(
        1 for p in range(coupling.num_qubits) if coupling.degree(p) >= d + 1
    )
    return saturated, capacity
