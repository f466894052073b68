"""Batch front door: generate suites, verify bundles, run the solver, score results.

Exit codes: 0 success, 1 verification or audit failure, 2 usage error.
"""

from __future__ import annotations

import hashlib
import json
import sys
import warnings
from collections import defaultdict
from pathlib import Path

import click

from .architectures import list_architectures, make_architecture
from .evalharness import (
    DetailRow,
    audit_result,
    detail_csv,
    read_result_bundle,
    summary_csv,
    swap_ratio,
)
from .generator import generate
from .graphs import QubikosError
from .oracle import exact_min_swaps
from .qasm import read_bundle, write_bundle
from .verify import run_all_checks
from .version import __version__

# A derivation-chain miss happens when a sampled backbone needs more gates
# than --gates allows; the next derived seed is tried instead.  This many
# misses in a row means the budget (or the device) is wrong, not the seed.
_MAX_CONSECUTIVE_MISSES = 50


def derive_seed(master: int, index: int) -> int:
    """Per-instance seed: first 8 bytes of sha256(f"{master}:{index}"), big-endian."""
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@click.group()
@click.version_option(__version__, prog_name="qubikos")
def main() -> None:
    """Routed-circuit benchmarks with known-optimal swap counts."""


@main.command()
@click.option("--arch", required=True, help="Device name, e.g. grid-3x3 or aspen4.")
@click.option("--swaps", required=True, type=click.IntRange(min=0), help="Designed minimum swap count.")
@click.option("--gates", required=True, type=click.IntRange(min=0), help="Two-qubit gate budget per instance.")
@click.option("--count", default=1, show_default=True, type=click.IntRange(min=1), help="Number of bundles to write.")
@click.option("--seed", default=0, show_default=True, type=int, help="Master seed; per-instance seeds are derived from it.")
@click.option(
    "--exact-seed",
    is_flag=True,
    help="Use --seed directly instead of the sha256 derivation; requires --count 1.",
)
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path))
def gen(arch: str, swaps: int, gates: int, count: int, seed: int, exact_seed: bool, out: Path) -> None:
    """Generate benchmark bundles under OUT, one directory per instance.

    Instance i uses the derived seed sha256(f"{seed}:{j}") (first 8 bytes,
    big-endian) for the i-th derivation index j whose sampled backbone fits
    the gate budget; the exact seed used is recorded in each meta.json.
    """
    if exact_seed and count != 1:
        raise click.UsageError("--exact-seed requires --count 1")
    try:
        coupling = make_architecture(arch)
    except QubikosError as exc:
        raise click.ClickException(str(exc)) from exc
    written = 0
    index = 0
    misses = 0
    last_miss = ""
    while written < count:
        child = seed if exact_seed else derive_seed(seed, index)
        index += 1
        try:
            inst = generate(coupling, num_sections=swaps, num_gates=gates, seed=child)
        except QubikosError as exc:
            misses += 1
            last_miss = str(exc)
            if exact_seed or misses >= _MAX_CONSECUTIVE_MISSES:
                raise click.ClickException(
                    f"generation failed after {misses} consecutive attempt(s): {last_miss}"
                ) from exc
            continue
        misses = 0
        name = f"{arch}-n{swaps}-{written:03d}"
        write_bundle(inst, out / name)
        click.echo(f"wrote {out / name}")
        written += 1
    click.echo(f"{written} bundle(s) in {out}")


def _bundle_dirs(root: Path) -> list[Path]:
    if (root / "meta.json").is_file():
        return [root]
    dirs = sorted(p for p in root.iterdir() if (p / "meta.json").is_file())
    if not dirs:
        raise click.ClickException(f"no bundles found under {root}")
    return dirs


@main.command()
@click.argument("bench", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON report object per bundle.")
def verify(bench: Path, as_json: bool) -> None:
    """Check every bundle under BENCH; exit 1 if any check fails."""
    failures = 0
    for bundle_dir in _bundle_dirs(bench):
        try:
            inst = read_bundle(bundle_dir)
        except QubikosError as exc:
            raise click.ClickException(f"{bundle_dir}: {exc}") from exc
        reports = run_all_checks(inst.coupling, inst)
        if as_json:
            click.echo(
                json.dumps({"bundle": bundle_dir.name, "reports": [r.to_dict() for r in reports]})
            )
        for report in reports:
            if report.valid:
                if not as_json:
                    click.echo(f"{bundle_dir.name}: {report.check} ok")
            else:
                failures += 1
                if not as_json:
                    for v in report.violations:
                        click.echo(f"{bundle_dir.name}: {report.check} FAIL: {v.message}")
    if failures:
        raise SystemExit(1)


@main.command()
@click.argument("bundle", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--budget", default=None, type=click.IntRange(min=0), help="Deepening limit; defaults to the bundle's designed count.")
@click.option("--time-limit", default=60.0, show_default=True, type=float, help="Wall-clock cap in seconds.")
@click.option("--state-cap", default=10_000_000, show_default=True, type=int, help="Explored-state cap.")
def oracle(bundle: Path, budget: int | None, time_limit: float, state_cap: int) -> None:
    """Search for the exact minimum swap count of BUNDLE's program circuit.

    Exit 0 when the search is conclusive (an exact minimum, or proof the
    budget is insufficient); exit 1 when resources ran out first or the
    found minimum contradicts the bundle's designed count.
    """
    try:
        inst = read_bundle(bundle)
    except QubikosError as exc:
        raise click.ClickException(str(exc)) from exc
    if budget is None:
        budget = inst.optimal_swaps
    result = exact_min_swaps(
        inst.coupling, inst.circuit, budget, state_cap=state_cap, time_limit=time_limit
    )
    click.echo(f"designed minimum: {inst.optimal_swaps}")
    if result.status == "optimal":
        click.echo(f"exact minimum: {result.swaps} ({result.explored} states explored)")
        if result.swaps != inst.optimal_swaps:
            click.echo("MISMATCH: the exact minimum differs from the designed count")
            raise SystemExit(1)
    elif result.status == "exceeds_budget":
        click.echo(f"exceeds budget {budget} ({result.explored} states explored)")
    else:
        click.echo(f"inconclusive: resources exhausted after {result.explored} states")
        raise SystemExit(1)


def _result_dirs(root: Path) -> list[Path]:
    return sorted(p.parent for p in root.rglob("result.json"))


@main.command()
@click.option("--bench", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--results", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--no-figures", is_flag=True, help="Skip rendering the per-architecture charts.")
def eval(bench: Path, results: Path, out: Path, no_figures: bool) -> None:
    """Audit result bundles under RESULTS against bundles under BENCH.

    Writes the per-instance table to OUT, the per-(arch, designed count,
    tool) summary next to it, and one chart per architecture alongside
    unless --no-figures is given. Exit 1 if any result fails its audit.
    """
    bundles = {p.name: p for p in _bundle_dirs(bench)}
    instances: dict[str, object] = {}
    details: list[DetailRow] = []
    grouped: dict[tuple[str, int, str], list] = defaultdict(list)
    any_invalid = False
    result_dirs = _result_dirs(results)
    if not result_dirs:
        raise click.ClickException(f"no result bundles found under {results}")
    for rdir in result_dirs:
        try:
            payload = json.loads((rdir / "result.json").read_text())
        except json.JSONDecodeError as exc:
            raise click.ClickException(f"{rdir}/result.json is not valid JSON: {exc}") from exc
        if isinstance(payload, dict) and payload.get("status") == "failed":
            click.echo(f"warning: {rdir.name}: tool reported failure, excluded", err=True)
            continue
        try:
            result = read_result_bundle(rdir)
        except QubikosError as exc:
            raise click.ClickException(str(exc)) from exc
        bundle_dir = bundles.get(result.instance_id)
        if bundle_dir is None:
            raise click.ClickException(
                f"{rdir}: result names instance {result.instance_id!r}, not present under {bench}"
            )
        if result.instance_id not in instances:
            try:
                instances[result.instance_id] = read_bundle(bundle_dir)
            except QubikosError as exc:
                raise click.ClickException(f"{bundle_dir}: {exc}") from exc
        inst = instances[result.instance_id]
        outcome = audit_result(inst.coupling, inst, result)
        for v in outcome.warnings():
            click.echo(f"warning: {rdir.name}: {v.message}", err=True)
        if not outcome.valid:
            any_invalid = True
            for v in outcome.violations:
                if v.severity == "error":
                    click.echo(f"invalid: {rdir.name}: {v.message}", err=True)
        details.append(
            DetailRow(
                arch=inst.coupling.name,
                instance=result.instance_id,
                tool=result.tool_name,
                optimal=inst.optimal_swaps,
                found=outcome.swap_count,
                valid=outcome.valid,
            )
        )
        grouped[(inst.coupling.name, inst.optimal_swaps, result.tool_name)].append(outcome)
    rows = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for (arch_name, n, tool), audits in sorted(grouped.items()):
            rows.append(swap_ratio(arch_name, tool, n, audits))
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(detail_csv(details))
    summary_path = out.with_name(out.stem + "-summary" + out.suffix)
    summary_text = summary_csv(rows)
    summary_path.write_text(summary_text)
    click.echo(f"wrote {out} and {summary_path}")
    click.echo(summary_text, nl=False)
    if not no_figures:
        from .plots import render_gap_figures

        for path in render_gap_figures(rows, out.parent):
            click.echo(f"wrote {path}")
    if any_invalid:
        raise SystemExit(1)


@main.group()
def arch() -> None:
    """Inspect the available device topologies."""


@arch.command("list")
def arch_list() -> None:
    """Print the device families and bundled named devices."""
    for name in list_architectures():
        click.echo(name)


@arch.command("show")
@click.argument("name")
def arch_show(name: str) -> None:
    """Print one device's qubit count and edge list as JSON."""
    try:
        coupling = make_architecture(name)
    except QubikosError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        json.dumps(
            {
                "name": coupling.name,
                "num_qubits": coupling.num_qubits,
                "edges": [list(e) for e in coupling.edges],
            }
        )
    )


if __name__ == "__main__":
    sys.exit(main())
