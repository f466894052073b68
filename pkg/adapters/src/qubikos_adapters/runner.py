"""Drive registered routing tools over benchmark bundles.

Each run writes a result bundle the audit harness can consume:
``transpiled.qasm`` plus ``result.json`` with the core keys (tool,
instance, initial_layout, trials, wall_time_s) and the adapter extras
(status, tool_version, layout_kind, seed). A tool that cannot run leaves
``result.json`` with status "failed" and the error text, so a batch keeps
going and the harness knows to exclude that entry. Input bundles are
never modified.
"""

from __future__ import annotations

import json
import time
from pathlib import Path
from typing import Callable

from qubikos import (
    Circuit,
    CouplingGraph,
    Mapping,
    QubikosError,
    emit_qasm,
    read_bundle,
)

from .router import route_circuit
from .version import __version__

ToolFn = Callable[[CouplingGraph, Circuit, int, int], tuple[Circuit, Mapping, str]]


def _run_reference(
    coupling: CouplingGraph, circuit: Circuit, trials: int, seed: int
) -> tuple[Circuit, Mapping, str]:
    routed = route_circuit(coupling, circuit, trials=trials, seed=seed)
    return routed.transpiled, routed.initial_layout, __version__


def _run_qiskit(
    coupling: CouplingGraph, circuit: Circuit, trials: int, seed: int
) -> tuple[Circuit, Mapping, str]:
    import qiskit
    from qiskit import QuantumCircuit
    from qiskit.transpiler import CouplingMap, PassManager
    from qiskit.transpiler.passes import SabreLayout

    source = QuantumCircuit(coupling.num_qubits)
    for g in circuit.gates:
        source.cx(g.a, g.b)
    cmap = CouplingMap()
    for u, v in coupling.edges:
        cmap.add_edge(u, v)
        cmap.add_edge(v, u)
    pm = PassManager(
        [SabreLayout(cmap, seed=seed, layout_trials=trials, swap_trials=trials)]
    )
    routed = pm.run(source)
    layout = pm.property_set["layout"]
    phys_of = tuple(layout[source.qubits[i]] for i in range(coupling.num_qubits))
    pairs: list[tuple[int, int]] = []
    kinds: list[str] = []
    for inst in routed.data:
        name = inst.operation.name
        if name in ("cx", "swap"):
            a, b = (routed.find_bit(q).index for q in inst.qubits)
            pairs.append((a, b))
            kinds.append(name)
        elif inst.operation.num_qubits > 1:
            raise QubikosError(f"unexpected multi-qubit op {name!r} in routed output")
    transpiled = Circuit.from_pairs(coupling.num_qubits, pairs, kinds)
    return transpiled, Mapping(phys_of), qiskit.__version__


TOOLS: dict[str, ToolFn] = {
    "reference-sabre": _run_reference,
    "qiskit-sabre": _run_qiskit,
}


def tool_available(tool: str) -> tuple[bool, str]:
    """Whether the tool can run here, and the version it would stamp."""
    if tool == "reference-sabre":
        return True, __version__
    if tool == "qiskit-sabre":
        try:
            import qiskit
        except ImportError:
            return False, "unavailable"
        return True, qiskit.__version__
    raise ValueError(f"unknown tool {tool!r}; known: {', '.join(sorted(TOOLS))}")


def load_coupling_file(path: str | Path) -> CouplingGraph:
    """Read a device from the JSON shape `arch show` prints: name, num_qubits, edges."""
    payload = json.loads(Path(path).read_text())
    return CouplingGraph(
        name=payload["name"],
        num_qubits=payload["num_qubits"],
        edges=tuple((int(u), int(v)) for u, v in payload["edges"]),
    )


def run_tool(
    tool: str,
    bundle_dir: str | Path,
    out_dir: str | Path,
    *,
    trials: int = 1,
    seed: int = 0,
    coupling_file: str | Path | None = None,
) -> Path:
    """Run one tool on one bundle; write the result bundle into out_dir."""
    if tool not in TOOLS:
        raise ValueError(f"unknown tool {tool!r}; known: {', '.join(sorted(TOOLS))}")
    bundle_dir = Path(bundle_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    coupling = load_coupling_file(coupling_file) if coupling_file else None
    instance = read_bundle(bundle_dir, coupling)
    start = time.perf_counter()
    try:
        transpiled, layout, version = TOOLS[tool](
            instance.coupling, instance.circuit, trials, seed
        )
    except Exception as exc:  # a dead tool must not kill the batch
        (out_dir / "result.json").write_text(
            json.dumps(
                {
                    "tool": tool,
                    "instance": bundle_dir.name,
                    "status": "failed",
                    "error": str(exc),
                    "tool_version": "unavailable",
                },
                indent=2,
            )
            + "\n"
        )
        return out_dir
    elapsed = time.perf_counter() - start
    (out_dir / "transpiled.qasm").write_text(emit_qasm(transpiled, "answer"))
    (out_dir / "result.json").write_text(
        json.dumps(
            {
                "tool": tool,
                "instance": bundle_dir.name,
                "initial_layout": list(layout.phys_of),
                "trials": trials,
                "wall_time_s": round(elapsed, 6),
                "status": "ok",
                "tool_version": version,
                "layout_kind": "initial",
                "seed": seed,
            },
            indent=2,
        )
        + "\n"
    )
    return out_dir
