"""Audit and gap-table behaviour, anchored by self-audit of designed answers."""

from __future__ import annotations

import dataclasses
import random

import pytest

from qubikos.architectures import make_architecture
from qubikos.evalharness import (
    AuditOutcome,
    DetailRow,
    GapRow,
    ToolResult,
    audit_result,
    detail_csv,
    read_result_bundle,
    summary_csv,
    swap_ratio,
    write_result_bundle,
)
from qubikos.generator import generate
from qubikos.graphs import Circuit, QubikosError
from qubikos.verify import check_answer_validity


def own_answer_result(inst) -> ToolResult:
    return ToolResult(
        instance_id="self",
        tool_name="designed",
        transpiled=inst.answer,
        initial_layout=inst.initial_mapping,
        trials=1,
        wall_time=0.0,
    )


def test_self_audit_is_valid_and_exact() -> None:
    cg = make_architecture("grid-3x3")
    inst = generate(cg, num_sections=2, num_gates=30, seed=7)
    outcome = audit_result(cg, inst, own_answer_result(inst))
    assert outcome.valid
    assert outcome.swap_count == inst.optimal_swaps == 2
    assert outcome.warnings() == ()


def test_audit_agrees_with_verify() -> None:
    cg = make_architecture("line-5")
    inst = generate(cg, num_sections=2, num_gates=20, seed=3)
    assert check_answer_validity(cg, inst).valid
    assert audit_result(cg, inst, own_answer_result(inst)).valid

    gates = [(g.a, g.b) for g in inst.answer.gates]
    kinds = [g.kind for g in inst.answer.gates]
    drop = next(i for i, k in enumerate(kinds) if k == "swap")
    broken = Circuit.from_pairs(
        inst.answer.num_qubits,
        gates[:drop] + gates[drop + 1 :],
        kinds[:drop] + kinds[drop + 1 :],
    )
    mutant = dataclasses.replace(inst, answer=broken)
    assert not check_answer_validity(cg, mutant).valid
    assert not audit_result(cg, inst, own_answer_result(mutant)).valid


def test_non_edge_gate_is_invalid() -> None:
    cg = make_architecture("line-5")
    inst = generate(cg, num_sections=1, num_gates=10, seed=0)
    gates = [(g.a, g.b) for g in inst.answer.gates]
    kinds = [g.kind for g in inst.answer.gates]
    gates[0] = (0, 4)
    bad = Circuit.from_pairs(5, gates, kinds)
    outcome = audit_result(cg, inst, dataclasses.replace(own_answer_result(inst), transpiled=bad))
    assert not outcome.valid
    assert any(v.kind == "non_edge" for v in outcome.violations)


def test_decomposed_swaps_warn_without_counting() -> None:
    cg = make_architecture("grid-3x3")
    inst = generate(cg, num_sections=2, num_gates=30, seed=7)
    gates: list[tuple[int, int]] = []
    kinds: list[str] = []
    for g in inst.answer.gates:
        if g.kind == "swap":
            gates.extend([(g.a, g.b), (g.b, g.a), (g.a, g.b)])
            kinds.extend(["cx", "cx", "cx"])
        else:
            gates.append((g.a, g.b))
            kinds.append(g.kind)
    expanded = Circuit.from_pairs(inst.answer.num_qubits, gates, kinds)
    outcome = audit_result(
        cg, inst, dataclasses.replace(own_answer_result(inst), transpiled=expanded)
    )
    assert outcome.swap_count == 0
    assert len(outcome.warnings()) == 2


def test_swap_ratio_arithmetic() -> None:
    audits = [AuditOutcome(5, True, ()), AuditOutcome(10, True, ())]
    row = swap_ratio("line-5", "t", 5, audits)
    assert row.average_swaps == 7.5
    assert row.ratio == 1.5


def test_swap_ratio_of_optimal_results_is_one() -> None:
    audits = [AuditOutcome(3, True, ())] * 4
    assert swap_ratio("a", "t", 3, audits).ratio == 1.0


def test_swap_ratio_excludes_invalid_with_warning() -> None:
    audits = [AuditOutcome(5, True, ()), AuditOutcome(99, False, ())]
    with pytest.warns(UserWarning, match="1 invalid"):
        row = swap_ratio("a", "t", 5, audits)
    assert row.average_swaps == 5.0
    assert row.ratio == 1.0


def test_swap_ratio_is_permutation_invariant() -> None:
    rng = random.Random(5)
    audits = [AuditOutcome(rng.randint(3, 20), True, ()) for _ in range(9)]
    base = swap_ratio("a", "t", 3, audits)
    for _ in range(5):
        rng.shuffle(audits)
        assert swap_ratio("a", "t", 3, audits) == base


def test_zero_designed_swaps_has_no_ratio() -> None:
    row = swap_ratio("a", "t", 0, [AuditOutcome(2, True, ())])
    assert row.average_swaps == 2.0
    assert row.ratio is None


def test_result_bundle_round_trip(tmp_path) -> None:
    cg = make_architecture("grid-3x3")
    inst = generate(cg, num_sections=2, num_gates=30, seed=7)
    result = own_answer_result(inst)
    out = write_result_bundle(result, tmp_path / "r")
    assert read_result_bundle(out) == result


def test_result_bundle_missing_key(tmp_path) -> None:
    cg = make_architecture("line-4")
    inst = generate(cg, num_sections=1, num_gates=8, seed=1)
    out = write_result_bundle(own_answer_result(inst), tmp_path / "r")
    (out / "result.json").write_text('{"tool": "x"}')
    with pytest.raises(QubikosError, match="instance"):
        read_result_bundle(out)


def test_result_bundle_bad_json(tmp_path) -> None:
    cg = make_architecture("line-4")
    inst = generate(cg, num_sections=1, num_gates=8, seed=1)
    out = write_result_bundle(own_answer_result(inst), tmp_path / "r")
    (out / "result.json").write_text("{nope")
    with pytest.raises(QubikosError, match="not valid JSON"):
        read_result_bundle(out)


def test_result_bundle_missing_file(tmp_path) -> None:
    with pytest.raises(QubikosError, match="transpiled.qasm"):
        read_result_bundle(tmp_path)


def test_detail_csv_header_and_rows() -> None:
    rows = [
        DetailRow("line-5", "b", "t", 2, 3, True),
        DetailRow("line-5", "a", "t", 2, 2, False),
    ]
    text = detail_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "arch,instance,tool,optimal,found,ratio,valid"
    assert lines[1] == "line-5,a,t,2,2,1,false"
    assert lines[2] == "line-5,b,t,2,3,1.5,true"


def test_summary_csv_header_and_na() -> None:
    rows = [
        GapRow("grid-3x3", 2, "t", 2.5, 1.25),
        GapRow("grid-3x3", 0, "t", 1.0, None),
    ]
    lines = summary_csv(rows).splitlines()
    assert lines[0] == "arch,designed_n,tool,average_swaps,ratio"
    assert lines[1] == "grid-3x3,0,t,1,n/a"
    assert lines[2] == "grid-3x3,2,t,2.5,1.25"
