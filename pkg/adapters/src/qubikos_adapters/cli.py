"""Command-line front end for the tool adapters."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from qubikos import QubikosError

from .runner import TOOLS, run_tool, tool_available
from .version import __version__


@click.group()
@click.version_option(__version__, prog_name="qubikos-adapters")
def main() -> None:
    """Run swap-routing tools on benchmark bundles."""


@main.command()
def tools() -> None:
    """List the registered tools and whether each can run here."""
    for name in sorted(TOOLS):
        ok, version = tool_available(name)
        state = f"available ({version})" if ok else "unavailable"
        click.echo(f"{name}: {state}")


def _bundle_dirs(root: Path) -> list[Path]:
    if (root / "meta.json").is_file():
        return [root]
    dirs = sorted(p for p in root.iterdir() if (p / "meta.json").is_file())
    if not dirs:
        raise click.ClickException(f"no bundles found under {root}")
    return dirs


@main.command()
@click.option("--tool", required=True, help="Registered tool name; see `tools`.")
@click.option("--bench", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--trials", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option(
    "--coupling-file",
    default=None,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Device JSON (as `qubikos arch show` prints) overriding each bundle's named device.",
)
def run(tool: str, bench: Path, out: Path, trials: int, seed: int, coupling_file: Path | None) -> None:
    """Run TOOL over every bundle under BENCH; write result bundles under OUT.

    Results land in OUT/<tool>/<bundle-name>/. A tool failure is recorded in
    that result's result.json and the batch continues; exit 1 if any failed.
    """
    if tool not in TOOLS:
        raise click.UsageError(f"unknown tool {tool!r}; known: {', '.join(sorted(TOOLS))}")
    failures = 0
    for bundle_dir in _bundle_dirs(bench):
        target = out / tool / bundle_dir.name
        try:
            run_tool(
                tool,
                bundle_dir,
                target,
                trials=trials,
                seed=seed,
                coupling_file=coupling_file,
            )
        except QubikosError as exc:
            raise click.ClickException(f"{bundle_dir}: {exc}") from exc
        if (target / "transpiled.qasm").is_file():
            click.echo(f"routed {bundle_dir.name} -> {target}")
        else:
            failures += 1
            click.echo(f"failed {bundle_dir.name} (see {target / 'result.json'})", err=True)
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    sys.exit(main())
