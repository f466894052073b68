"""Routed-circuit benchmarks whose minimum swap count is known by construction.

Each generated instance bundles a program circuit, a device, and a routed
answer using exactly the designed number of swaps; verification, an exact
search, and an audit harness for third-party routers live alongside.
"""

from __future__ import annotations

from .architectures import NAMED_DEVICES, list_architectures, make_architecture
from .evalharness import (
    AuditOutcome,
    GapRow,
    ToolResult,
    audit_result,
    read_result_bundle,
    swap_ratio,
    write_result_bundle,
)
from .generator import BenchmarkInstance, generate, pad_instance
from .graphs import (
    Circuit,
    CouplingGraph,
    DependencyDag,
    Gate,
    InteractionGraph,
    Mapping,
    QubikosError,
)
from .oracle import OracleResult, brute_force_min_swaps, exact_min_swaps
from .qasm import ParseError, emit_qasm, parse_qasm, read_bundle, write_bundle
from .verify import (
    CheckReport,
    Violation,
    check_answer_validity,
    check_section_hardness,
    check_serialization,
    run_all_checks,
)
from .version import __version__

__all__ = [
    "AuditOutcome",
    "BenchmarkInstance",
    "CheckReport",
    "Circuit",
    "CouplingGraph",
    "DependencyDag",
    "GapRow",
    "Gate",
    "InteractionGraph",
    "Mapping",
    "NAMED_DEVICES",
    "OracleResult",
    "ParseError",
    "QubikosError",
    "ToolResult",
    "Violation",
    "__version__",
    "audit_result",
    "brute_force_min_swaps",
    "check_answer_validity",
    "check_section_hardness",
    "check_serialization",
    "emit_qasm",
    "exact_min_swaps",
    "generate",
    "list_architectures",
    "make_architecture",
    "pad_instance",
    "parse_qasm",
    "read_bundle",
    "read_result_bundle",
    "run_all_checks",
    "swap_ratio",
    "write_bundle",
    "write_result_bundle",
]
