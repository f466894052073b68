"""Independent checks of every per-instance claim.

Everything here re-derives its facts from the instance data alone: the
dependency DAG and interaction graphs are rebuilt from the gate list, the
placement history from the initial mapping plus the swap schedule. The
generator's word is never taken for anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import (
    Circuit,
    CouplingGraph,
    InteractionGraph,
    Mapping,
    build_dependency_dag,
    normalize_edge,
)
from .subiso import embedding_is_valid, find_embedding

Pair = tuple[int, int]


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    severity: str = "error"  # "error" | "warning"
    gate: int | None = None
    section: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "severity": self.severity, "message": self.message}
        if self.gate is not None:
            out["gate"] = self.gate
        if self.section is not None:
            out["section"] = self.section
        return out


@dataclass(frozen=True)
class CheckReport:
    check: str
    violations: tuple[Violation, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not any(v.severity == "error" for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
        }


def replay_answer(
    coupling: CouplingGraph,
    circuit: Circuit,
    answer: Circuit,
    initial_mapping: Mapping,
) -> tuple[list[Violation], int]:
    """Walk a routed circuit gate by gate and match it against the program.

    Checks that every gate sits on a device edge and that dropping swaps and
    un-mapping yields the program's gates in an order its dependencies allow.
    Matching is forced: two program gates on the same qubit pair always
    depend on each other, so at most one of them is ready at any moment.
    Returns the violations and the number of swap occurrences.
    """
    violations: list[Violation] = []
    dag = build_dependency_dag(circuit)
    done = [False] * len(circuit.gates)
    remaining_parents = [len(p) for p in dag.parents]
    ready_by_pair: dict[Pair, int] = {}
    for i, g in enumerate(circuit.gates):
        if remaining_parents[i] == 0:
            ready_by_pair[g.pair()] = i

    def mark_done(i: int) -> None:
        done[i] = True
        for child in dag.children[i]:
            remaining_parents[child] -= 1
            if remaining_parents[child] == 0:
                ready_by_pair[circuit.gates[child].pair()] = child

    f = initial_mapping
    swap_count = 0
    for ai, g in enumerate(answer.gates):
        pair = normalize_edge(g.a, g.b)
        if not coupling.has_edge(*pair):
            violations.append(
                Violation(
                    "non_edge",
                    f"answer gate {ai} acts on ({g.a}, {g.b}), not a device edge",
                    gate=ai,
                )
            )
            continue
        if g.kind == "swap":
            swap_count += 1
            f = f.apply_swap(coupling, pair)
            continue
        prog_pair = normalize_edge(f.program(g.a), f.program(g.b))
        match = ready_by_pair.pop(prog_pair, None)
        if match is None:
            violations.append(
                Violation(
                    "unmatched_gate",
                    f"answer gate {ai} maps to program pair {prog_pair}, but no "
                    "such gate is ready: it is absent, already consumed, or "
                    "blocked by an unexecuted dependency",
                    gate=ai,
                )
            )
            continue
        mark_done(match)
    missing = [i for i, d in enumerate(done) if not d]
    if missing:
        violations.append(
            Violation(
                "missing_gates",
                f"{len(missing)} program gates never appear in the answer "
                f"(first: {missing[0]})",
                gate=missing[0],
            )
        )
    return violations, swap_count


def check_answer_validity(coupling: CouplingGraph, instance) -> CheckReport:
    """The answer must execute the program on device edges, in a dependency-
    respecting order, with exactly the claimed number of swaps."""
    violations, swap_count = replay_answer(
        coupling, instance.circuit, instance.answer, instance.initial_mapping
    )
    if swap_count != instance.optimal_swaps:
        violations.append(
            Violation(
                "swap_count",
                f"answer holds {swap_count} swaps but the instance claims "
                f"{instance.optimal_swaps}",
            )
        )
    return CheckReport("answer_validity", tuple(violations))


def _mapping_snapshots(coupling: CouplingGraph, instance) -> list[Mapping]:
    snaps = [instance.initial_mapping]
    for _, edge in instance.swap_schedule:
        snaps.append(snaps[-1].apply_swap(coupling, normalize_edge(*edge)))
    return snaps


def check_section_hardness(coupling: CouplingGraph, instance) -> CheckReport:
    """Each section's interaction graph (special gate and in-section padding
    included) must not embed into the device graph, while the same graph
    without the special gate must embed. The embeddable half is witnessed
    first by the placement the answer actually used; a full search only runs
    if that witness fails."""
    violations: list[Violation] = []
    snapshots = _mapping_snapshots(coupling, instance)
    nq = instance.circuit.num_qubits
    for k, (start, end) in enumerate(instance.sections()):
        pairs = [instance.circuit.gates[i].pair() for i in range(start, end)]
        special = pairs[-1]
        body = sorted(set(pairs[:-1]))
        full = InteractionGraph.from_edges(nq, body + [special])
        if find_embedding(full, coupling) is not None:
            violations.append(
                Violation(
                    "section_embeddable",
                    f"section {k} embeds into the device even with its final "
                    "gate, so it forces no swap",
                    section=k,
                )
            )
        if not body:
            continue
        without = InteractionGraph.from_edges(nq, body)
        snap = snapshots[k] if k < len(snapshots) else snapshots[-1]
        touched = sorted({q for e in body for q in e})
        witness = {q: snap.physical(q) for q in touched}
        if not embedding_is_valid(without, coupling, witness):
            if find_embedding(without, coupling) is None:
                violations.append(
                    Violation(
                        "section_rigid",
                        f"section {k} does not embed even without its final "
                        "gate, so its hardness is not pinned to that gate",
                        section=k,
                    )
                )
    return CheckReport("section_hardness", tuple(violations))


def check_serialization(instance) -> CheckReport:
    """Every gate of a section must be an ancestor of every gate of the next
    section, so the sections execute strictly in order."""
    violations: list[Violation] = []
    dag = build_dependency_dag(instance.circuit)
    anc = dag.ancestor_masks()
    ranges = instance.sections()
    for k in range(len(ranges) - 1):
        s0, e0 = ranges[k]
        mask = 0
        for i in range(s0, e0):
            mask |= 1 << i
        s1, e1 = ranges[k + 1]
        for v in range(s1, e1):
            gap = mask & ~anc[v]
            if gap:
                miss = gap.bit_length() - 1
                violations.append(
                    Violation(
                        "not_serialized",
                        f"gate {v} in section {k + 1} does not depend on gate "
                        f"{miss} in section {k}",
                        gate=v,
                        section=k + 1,
                    )
                )
                break
    return CheckReport("serialization", tuple(violations))


def run_all_checks(coupling: CouplingGraph, instance) -> list[CheckReport]:
    return [
        check_answer_validity(coupling, instance),
        check_section_hardness(coupling, instance),
        check_serialization(instance),
    ]
