"""Targeted instance corruptions used to prove the checks have teeth.

Each helper returns a new BenchmarkInstance with exactly one defect class
injected: a missing swap, two dependent gates transposed, a missing
section-final gate, or a relabeled qubit.
"""

from __future__ import annotations

import dataclasses

from qubikos.generator import BenchmarkInstance
from qubikos.graphs import Circuit


def _rebuild(circuit: Circuit, seq: list[tuple[int, int, str]]) -> Circuit:
    return Circuit.from_pairs(
        circuit.num_qubits, [(a, b) for a, b, _ in seq], [k for _, _, k in seq]
    )


def drop_swap(inst: BenchmarkInstance, which: int = 0) -> BenchmarkInstance:
    """Delete one swap occurrence from the answer."""
    seq = [(g.a, g.b, g.kind) for g in inst.answer.gates]
    seen = 0
    for i, (_, _, kind) in enumerate(seq):
        if kind == "swap":
            if seen == which:
                del seq[i]
                return dataclasses.replace(inst, answer=_rebuild(inst.answer, seq))
            seen += 1
    raise ValueError("answer has no swap to drop")


def transpose_dependent(inst: BenchmarkInstance) -> BenchmarkInstance:
    """Exchange two adjacent answer gates that share a physical qubit (and
    hence, both being between the same swaps, a program qubit)."""
    seq = [(g.a, g.b, g.kind) for g in inst.answer.gates]
    for i in range(len(seq) - 1):
        a0, b0, k0 = seq[i]
        a1, b1, k1 = seq[i + 1]
        # exactly one shared qubit: same-pair neighbours commute as far as
        # pair-multiset replay can see, so exchanging them proves nothing
        if k0 == "cx" and k1 == "cx" and len({a0, b0} & {a1, b1}) == 1:
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
            return dataclasses.replace(inst, answer=_rebuild(inst.answer, seq))
    raise ValueError("answer has no adjacent dependent gate pair")


def remove_special(inst: BenchmarkInstance, section: int = 0) -> BenchmarkInstance:
    """Delete a section-final gate from the answer (the gate its swap paid
    for), leaving the program claiming a gate the answer never runs."""
    pos = inst.special_positions()[section]
    answer_index = pos + section + 1  # past earlier swaps and this section's own
    seq = [(g.a, g.b, g.kind) for g in inst.answer.gates]
    assert seq[answer_index][2] == "cx"
    del seq[answer_index]
    return dataclasses.replace(inst, answer=_rebuild(inst.answer, seq))


def relabel_qubit(inst: BenchmarkInstance) -> BenchmarkInstance:
    """Swap the two program-qubit labels with the most unequal gate counts
    throughout the program circuit. The pair multiset provably changes, so
    the answer no longer implements the program."""
    counts = [0] * inst.circuit.num_qubits
    for g in inst.circuit.gates:
        counts[g.a] += 1
        counts[g.b] += 1
    hi = max(range(len(counts)), key=lambda q: (counts[q], -q))
    lo = min(range(len(counts)), key=lambda q: (counts[q], q))
    if counts[hi] == counts[lo]:
        raise ValueError("all qubits interact equally; relabeling is invisible")

    def sub(q: int) -> int:
        return lo if q == hi else hi if q == lo else q

    seq = [(sub(g.a), sub(g.b), g.kind) for g in inst.circuit.gates]
    return dataclasses.replace(inst, circuit=_rebuild(inst.circuit, seq))


MUTATIONS = {
    "drop_swap": drop_swap,
    "transpose_dependent": transpose_dependent,
    "remove_special": remove_special,
    "relabel_qubit": relabel_qubit,
}
