"""Chart rendering writes one readable PNG per architecture."""

from __future__ import annotations

from qubikos.evalharness import GapRow
from qubikos.plots import render_gap_figures


def test_one_figure_per_arch(tmp_path) -> None:
    rows = [
        GapRow("aspen4", 5, "router-a", 7.5, 1.5),
        GapRow("aspen4", 10, "router-a", 13.0, 1.3),
        GapRow("aspen4", 5, "router-b", 6.0, 1.2),
        GapRow("sycamore54", 5, "router-a", 9.0, 1.8),
    ]
    written = render_gap_figures(rows, tmp_path)
    assert [p.name for p in written] == ["gaps-aspen4.png", "gaps-sycamore54.png"]
    for p in written:
        assert p.stat().st_size > 1000
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_rows_without_ratio_are_skipped(tmp_path) -> None:
    rows = [GapRow("aspen4", 0, "router-a", 2.0, None)]
    assert render_gap_figures(rows, tmp_path) == []
    assert not list(tmp_path.iterdir())
