"""Audit routed circuits from external tools and tabulate optimality gaps.

A tool under evaluation receives a benchmark bundle and returns a result
bundle: ``transpiled.qasm`` (the routed circuit over physical qubits) plus
``result.json`` recording the tool name, instance id, initial layout,
trial count, and wall time.  The audit replays the routed circuit with the
same machinery the verifier uses on designed answers, so the two can never
disagree about what counts as a correct routing.

SWAP counting is literal: only explicit ``swap`` operations count.  A run
of three consecutive CX gates alternating on one qubit pair is flagged as
a probable decomposed swap, but the count is never adjusted, because
silent pattern rewriting risks miscounting.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .generator import BenchmarkInstance
from .graphs import Circuit, CouplingGraph, Mapping, QubikosError
from .qasm import emit_qasm, parse_qasm
from .verify import Violation, replay_answer

RESULT_KEYS = ("tool", "instance", "initial_layout", "trials", "wall_time_s")

DETAIL_HEADER = ("arch", "instance", "tool", "optimal", "found", "ratio", "valid")
SUMMARY_HEADER = ("arch", "designed_n", "tool", "average_swaps", "ratio")


@dataclass(frozen=True)
class ToolResult:
    """One tool's routed output for one benchmark instance."""

    instance_id: str
    tool_name: str
    transpiled: Circuit
    initial_layout: Mapping
    trials: int
    wall_time: float


@dataclass(frozen=True)
class AuditOutcome:
    swap_count: int
    valid: bool
    violations: tuple[Violation, ...]

    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == "warning")

    def to_dict(self) -> dict:
        return {
            "swap_count": self.swap_count,
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
        }


@dataclass(frozen=True)
class GapRow:
    """One summary line: how far a tool's average sits above the designed minimum."""

    arch: str
    designed_n: int
    tool: str
    average_swaps: float | None
    ratio: float | None


def _decomposition_warnings(transpiled: Circuit) -> list[Violation]:
    """Flag runs of three CX gates alternating on a single qubit pair."""
    gates = transpiled.gates
    found: list[Violation] = []
    i = 0
    while i + 2 < len(gates):
        g0, g1, g2 = gates[i], gates[i + 1], gates[i + 2]
        if (
            g0.kind == g1.kind == g2.kind == "cx"
            and (g1.a, g1.b) == (g0.b, g0.a)
            and (g2.a, g2.b) == (g0.a, g0.b)
        ):
            found.append(
                Violation(
                    kind="swap_decomposition",
                    message=(
                        f"gates {i}..{i + 2} look like a swap decomposed into three "
                        f"CX on ({g0.a}, {g0.b}); counting explicit swaps only"
                    ),
                    severity="warning",
                    gate=i,
                )
            )
            i += 3
        else:
            i += 1
    return found


def audit_result(
    coupling: CouplingGraph, instance: BenchmarkInstance, result: ToolResult
) -> AuditOutcome:
    """Replay a tool's routed circuit against the instance's program.

    Validity uses the tool's own layout and circuit; the designed answer
    plays no part.  The swap count is the number of explicit swap
    operations, with probable 3-CX decompositions reported as warnings.
    """
    violations, swap_count = replay_answer(
        coupling, instance.circuit, result.transpiled, result.initial_layout
    )
    violations.extend(_decomposition_warnings(result.transpiled))
    valid = all(v.severity != "error" for v in violations)
    return AuditOutcome(swap_count=swap_count, valid=valid, violations=tuple(violations))


def swap_ratio(
    arch: str, tool: str, designed_n: int, audits: Sequence[AuditOutcome]
) -> GapRow:
    """Average the valid audits' swap counts and divide by the designed minimum.

    Invalid audits are excluded with a warning.  A designed minimum of zero
    leaves the ratio undefined; the row reports it as not applicable.
    """
    counts = [a.swap_count for a in audits if a.valid]
    excluded = len(audits) - len(counts)
    if excluded:
        warnings.warn(
            f"excluded {excluded} invalid result(s) from the {arch}/{tool} average",
            stacklevel=2,
        )
    average = statistics.fmean(counts) if counts else None
    ratio = average / designed_n if average is not None and designed_n >= 1 else None
    return GapRow(arch=arch, designed_n=designed_n, tool=tool, average_swaps=average, ratio=ratio)


def write_result_bundle(result: ToolResult, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "transpiled.qasm").write_text(emit_qasm(result.transpiled, "answer"))
    payload = {
        "tool": result.tool_name,
        "instance": result.instance_id,
        "initial_layout": list(result.initial_layout.phys_of),
        "trials": result.trials,
        "wall_time_s": result.wall_time,
    }
    (directory / "result.json").write_text(json.dumps(payload, indent=2) + "\n")
    return directory


def read_result_bundle(directory: str | Path) -> ToolResult:
    directory = Path(directory)
    qasm_path = directory / "transpiled.qasm"
    json_path = directory / "result.json"
    for path in (qasm_path, json_path):
        if not path.is_file():
            raise QubikosError(f"result bundle {directory} is missing {path.name}")
    try:
        payload = json.loads(json_path.read_text())
    except json.JSONDecodeError as exc:
        raise QubikosError(f"{json_path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise QubikosError(f"{json_path} must hold a JSON object")
    missing = [k for k in RESULT_KEYS if k not in payload]
    if missing:
        raise QubikosError(f"{json_path} lacks required keys: {', '.join(missing)}")
    layout = payload["initial_layout"]
    if not isinstance(layout, list) or not all(isinstance(x, int) for x in layout):
        raise QubikosError(f"{json_path} initial_layout must be a list of integers")
    trials = payload["trials"]
    if not isinstance(trials, int) or trials < 1:
        raise QubikosError(f"{json_path} trials must be a positive integer")
    try:
        mapping = Mapping(tuple(layout))
    except QubikosError as exc:
        raise QubikosError(f"{json_path} initial_layout: {exc}") from exc
    return ToolResult(
        instance_id=str(payload["instance"]),
        tool_name=str(payload["tool"]),
        transpiled=parse_qasm(qasm_path.read_text()),
        initial_layout=mapping,
        trials=trials,
        wall_time=float(payload["wall_time_s"]),
    )


@dataclass(frozen=True)
class DetailRow:
    """One audited result in the per-instance table."""

    arch: str
    instance: str
    tool: str
    optimal: int
    found: int
    valid: bool


def _fmt(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.6g}"


def detail_csv(rows: Sequence[DetailRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DETAIL_HEADER)
    for row in sorted(rows, key=lambda r: (r.arch, r.instance, r.tool)):
        ratio = row.found / row.optimal if row.optimal >= 1 else None
        writer.writerow(
            [
                row.arch,
                row.instance,
                row.tool,
                row.optimal,
                row.found,
                _fmt(ratio),
                "true" if row.valid else "false",
            ]
        )
    return buf.getvalue()


def summary_csv(rows: Sequence[GapRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for row in sorted(rows, key=lambda r: (r.arch, r.designed_n, r.tool)):
        writer.writerow(
            [row.arch, row.designed_n, row.tool, _fmt(row.average_swaps), _fmt(row.ratio)]
        )
    return buf.getvalue()
