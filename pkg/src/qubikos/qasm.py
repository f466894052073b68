"""QASM 2.0 emission and tolerant parsing, plus instance bundles on disk.

A bundle directory holds circuit.qasm (the program, over program qubits),
answer.qasm (the routed version, over physical qubits, swaps explicit), and
meta.json. The meta schema is the compatibility contract other tools read:

    {
      "schema_version": 1,
      "arch": str, "seed": int, "optimal_swaps": int,
      "two_qubit_gates": int,
      "initial_mapping": [physical seat per program qubit],
      "swap_schedule": [{"answer_index": int, "edge": [int, int]}],
      "section_boundaries": [[start, end], ...],   // half-open gate ranges
      "generator_version": str
    }

Each section's final gate (position end-1) is the gate its swap unlocks.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .architectures import make_architecture
from .generator import BenchmarkInstance
from .graphs import Circuit, CouplingGraph, Mapping, QubikosError
from .version import __version__


class ParseError(QubikosError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# gates understood as single-qubit and therefore skippable
_ONE_QUBIT = {
    "h", "x", "y", "z", "s", "sdg", "t", "tdg", "sx", "sxdg",
    "rx", "ry", "rz", "p", "r", "u", "u1", "u2", "u3", "id",
}
_SKIP = {"barrier", "measure", "reset", "creg", "include"}
_QREG = re.compile(r"qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]")
_ARG = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]")


def emit_qasm(circuit: Circuit, kind: str = "benchmark") -> str:
    """Render a circuit as OPENQASM 2.0 text, byte-deterministically.

    `benchmark` emits a program (cx only, program-qubit indices); `answer`
    additionally allows explicit swap gates over physical indices.
    """
    if kind not in ("benchmark", "answer"):
        raise QubikosError(f"unknown qasm kind {kind!r}")
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.num_qubits}];",
    ]
    for g in circuit.gates:
        if g.kind == "swap" and kind == "benchmark":
            raise QubikosError("a program circuit must not contain swap gates")
        lines.append(f"{g.kind} q[{g.a}],q[{g.b}];")
    return "\n".join(lines) + "\n"


def parse_qasm(text: str) -> Circuit:
    """Extract the two-qubit gate sequence from single-register QASM 2.0.

    Single-qubit gates, barriers, measurements, resets, and classical
    registers are skipped. Multiple quantum registers, unknown multi-qubit
    gates, and out-of-range indices are structured errors carrying the line
    number. Custom gate definition blocks are skipped wholesale.
    """
    register: str | None = None
    size = 0
    pairs: list[tuple[int, int]] = []
    kinds: list[str] = []
    depth = 0  # inside a `gate ... { ... }` definition when > 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//")[0]
        if depth > 0 or line.lstrip().startswith("gate "):
            depth += line.count("{") - line.count("}")
            if depth < 0:
                raise ParseError("unbalanced braces", lineno)
            continue
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt or stmt.startswith("OPENQASM"):
                continue
            op = re.split(r"[\s(]", stmt, maxsplit=1)[0]
            if op == "qreg":
                m = _QREG.search(stmt)
                if not m:
                    raise ParseError(f"malformed register declaration {stmt!r}", lineno)
                if register is not None:
                    raise ParseError("multiple quantum registers are not supported", lineno)
                register, size = m.group(1), int(m.group(2))
                continue
            if op in _SKIP or op in _ONE_QUBIT:
                continue
            if op in ("cx", "CX", "swap"):
                args = _ARG.findall(stmt)
                if register is None:
                    raise ParseError("gate before any qreg declaration", lineno)
                if len(args) != 2:
                    raise ParseError(f"{op} expects two indexed qubits: {stmt!r}", lineno)
                qubits = []
                for reg, idx in args:
                    if reg != register:
                        raise ParseError(f"unknown register {reg!r}", lineno)
                    q = int(idx)
                    if q >= size:
                        raise ParseError(f"qubit index {q} out of range (size {size})", lineno)
                    qubits.append(q)
                if qubits[0] == qubits[1]:
                    raise ParseError(f"{op} acts twice on qubit {qubits[0]}", lineno)
                pairs.append((qubits[0], qubits[1]))
                kinds.append("swap" if op == "swap" else "cx")
                continue
            args = _ARG.findall(stmt)
            if len(args) >= 2:
                raise ParseError(f"unknown multi-qubit gate {op!r}", lineno)
            # unknown single-qubit operation: skipped like the named ones
    if register is None:
        raise ParseError("no quantum register declared", max(1, text.count("\n") + 1))
    return Circuit.from_pairs(size, pairs, kinds)


_META_KEYS = (
    "schema_version",
    "arch",
    "seed",
    "optimal_swaps",
    "two_qubit_gates",
    "initial_mapping",
    "swap_schedule",
    "section_boundaries",
    "generator_version",
)


def write_bundle(instance: BenchmarkInstance, directory: str | Path) -> Path:
    """Write circuit.qasm, answer.qasm, and meta.json; returns the directory."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "circuit.qasm").write_text(emit_qasm(instance.circuit, "benchmark"))
    (out / "answer.qasm").write_text(emit_qasm(instance.answer, "answer"))
    meta = {
        "schema_version": 1,
        "arch": instance.coupling.name,
        "seed": instance.seed,
        "optimal_swaps": instance.optimal_swaps,
        "two_qubit_gates": len(instance.circuit.gates),
        "initial_mapping": list(instance.initial_mapping.phys_of),
        "swap_schedule": [
            {"answer_index": i, "edge": list(edge)} for i, edge in instance.swap_schedule
        ],
        "section_boundaries": [list(r) for r in instance.sections()],
        "generator_version": __version__,
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return out


def read_bundle(
    directory: str | Path, coupling: CouplingGraph | None = None
) -> BenchmarkInstance:
    """Load a bundle back into a BenchmarkInstance.

    The coupling graph is resolved from the recorded architecture name
    unless one is supplied (needed for custom device files)."""
    src = Path(directory)
    for name in ("circuit.qasm", "answer.qasm", "meta.json"):
        if not (src / name).is_file():
            raise QubikosError(f"bundle is missing {name} in {src}")
    meta = json.loads((src / "meta.json").read_text())
    missing = [k for k in _META_KEYS if k not in meta]
    if missing:
        raise QubikosError(f"meta.json lacks required keys: {', '.join(missing)}")
    if meta["schema_version"] != 1:
        raise QubikosError(f"unsupported schema_version {meta['schema_version']!r}")
    if coupling is None:
        coupling = make_architecture(meta["arch"])
    circuit = parse_qasm((src / "circuit.qasm").read_text())
    answer = parse_qasm((src / "answer.qasm").read_text())
    boundaries = []
    for entry in meta["section_boundaries"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise QubikosError("section_boundaries must hold [start, end] pairs")
        boundaries.append(int(entry[1]))
    return BenchmarkInstance(
        coupling=coupling,
        circuit=circuit,
        answer=answer,
        initial_mapping=Mapping(tuple(meta["initial_mapping"])),
        swap_schedule=tuple(
            (int(e["answer_index"]), (int(e["edge"][0]), int(e["edge"][1])))
            for e in meta["swap_schedule"]
        ),
        section_boundaries=tuple(boundaries),
        optimal_swaps=int(meta["optimal_swaps"]),
        seed=int(meta["seed"]),
    )
