"""Adapter runner: result bundles, failure recording, CLI batch behaviour."""

from __future__ import annotations

import importlib.util
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from qubikos import audit_result, generate, make_architecture, read_bundle, read_result_bundle, write_bundle
from qubikos_adapters.cli import main
from qubikos_adapters.runner import load_coupling_file, run_tool

HAVE_QISKIT = importlib.util.find_spec("qiskit") is not None


def make_bundle(tmp_path: Path, arch: str = "grid-3x3", n: int = 2, gates: int = 30, seed: int = 7) -> Path:
    cg = make_architecture(arch)
    inst = generate(cg, num_sections=n, num_gates=gates, seed=seed)
    return write_bundle(inst, tmp_path / f"{arch}-n{n}-000")


def snapshot(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_reference_run_produces_auditable_result(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    out = run_tool("reference-sabre", bundle, tmp_path / "r", trials=2, seed=1)
    payload = json.loads((out / "result.json").read_text())
    assert payload["status"] == "ok"
    assert payload["layout_kind"] == "initial"
    assert payload["tool_version"]
    assert payload["trials"] == 2
    result = read_result_bundle(out)
    assert result.instance_id == bundle.name
    inst = read_bundle(bundle)
    outcome = audit_result(inst.coupling, inst, result)
    assert outcome.valid
    assert outcome.swap_count >= inst.optimal_swaps


def test_run_tool_never_touches_the_bundle(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    before = snapshot(bundle)
    run_tool("reference-sabre", bundle, tmp_path / "r", trials=1, seed=0)
    assert snapshot(bundle) == before


def test_unknown_tool_is_rejected(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    with pytest.raises(ValueError, match="unknown tool"):
        run_tool("nosuch", bundle, tmp_path / "r")


def test_coupling_file_override(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    cg = make_architecture("grid-3x3")
    device = tmp_path / "device.json"
    device.write_text(
        json.dumps({"name": cg.name, "num_qubits": cg.num_qubits, "edges": [list(e) for e in cg.edges]})
    )
    assert load_coupling_file(device) == cg
    out = run_tool("reference-sabre", bundle, tmp_path / "r", trials=1, seed=0, coupling_file=device)
    assert json.loads((out / "result.json").read_text())["status"] == "ok"


@pytest.mark.skipif(HAVE_QISKIT, reason="qiskit present; the failure path cannot trigger")
def test_missing_tool_records_failure(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    out = run_tool("qiskit-sabre", bundle, tmp_path / "r", trials=1, seed=0)
    payload = json.loads((out / "result.json").read_text())
    assert payload["status"] == "failed"
    assert "qiskit" in payload["error"]
    assert not (out / "transpiled.qasm").exists()


@pytest.mark.skipif(not HAVE_QISKIT, reason="qiskit not installed")
def test_qiskit_run_produces_auditable_result(tmp_path) -> None:
    bundle = make_bundle(tmp_path)
    out = run_tool("qiskit-sabre", bundle, tmp_path / "r", trials=2, seed=1)
    result = read_result_bundle(out)
    inst = read_bundle(bundle)
    outcome = audit_result(inst.coupling, inst, result)
    assert outcome.valid
    assert outcome.swap_count >= inst.optimal_swaps


def test_cli_tools_listing() -> None:
    result = CliRunner().invoke(main, ["tools"])
    assert result.exit_code == 0
    assert "reference-sabre: available" in result.output
    assert "qiskit-sabre" in result.output


def test_cli_run_batch(tmp_path) -> None:
    bench = tmp_path / "bench"
    for seed in (7, 8):
        cg = make_architecture("grid-3x3")
        inst = generate(cg, num_sections=2, num_gates=30, seed=seed)
        write_bundle(inst, bench / f"grid-3x3-n2-{seed:03d}")
    result = CliRunner().invoke(
        main,
        ["run", "--tool", "reference-sabre", "--bench", str(bench), "--out", str(tmp_path / "res"), "--trials", "1"],
    )
    assert result.exit_code == 0, result.output
    written = sorted(p.parent.name for p in (tmp_path / "res").rglob("result.json"))
    assert written == ["grid-3x3-n2-007", "grid-3x3-n2-008"]


def test_cli_unknown_tool_is_usage_error(tmp_path) -> None:
    bench = tmp_path / "bench"
    make_bundle(bench)
    result = CliRunner().invoke(
        main, ["run", "--tool", "nosuch", "--bench", str(bench), "--out", str(tmp_path / "res")]
    )
    assert result.exit_code == 2


@pytest.mark.skipif(HAVE_QISKIT, reason="qiskit present; the failure path cannot trigger")
def test_cli_reports_failed_runs(tmp_path) -> None:
    bench = tmp_path / "bench"
    make_bundle(bench)
    result = CliRunner().invoke(
        main,
        ["run", "--tool", "qiskit-sabre", "--bench", str(bench), "--out", str(tmp_path / "res")],
    )
    assert result.exit_code == 1
    assert "failed" in result.output
