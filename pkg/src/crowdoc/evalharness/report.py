"""Comparison-table rendering and metric figures."""

from __future__ import annotations

from pathlib import Path

from ..errors import NoReports
from .metrics import MetricsReport

COLUMNS = ("Correctness", "Uniqueness", "Overlap", "# of Snippets")


def _pct(value: float) -> str:
    return f"{value * 100:.1f}%"


def _count(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return f"{value:.1f}"


def render_comparison(reports: list[tuple[str, MetricsReport]]) -> str:
    """One row per method: correctness, uniqueness, overlap as one-decimal
    percentages, plus mean snippets per document."""
    if not reports:
        raise NoReports("nothing to render")
    name_width = max(len("Method"), max(len(name) for name, _ in reports)) + 2
    col = max(len(c) for c in COLUMNS) + 2
    header = "Method".ljust(name_width) + "".join(c.rjust(col) for c in COLUMNS)
    lines = [header]
    for name, report in reports:
        cells = (
            _pct(report.correctness),
            _pct(report.uniqueness),
            _pct(report.overlap),
            _count(report.snippet_count),
        )
        lines.append(name.ljust(name_width) + "".join(c.rjust(col) for c in cells))
    return "\n".join(lines) + "\n"


def render_metrics_figure(
    reports: list[tuple[str, MetricsReport]], out_path: str | Path
) -> Path:
    """Grouped bar chart of the three ratio metrics per method."""
    if not reports:
        raise NoReports("nothing to plot")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    names = [name for name, _ in reports]
    metrics = {
        "Correctness": [r.correctness * 100 for _, r in reports],
        "Uniqueness": [r.uniqueness * 100 for _, r in reports],
        "Overlap": [r.overlap * 100 for _, r in reports],
    }
    x = np.arange(len(names))
    width = 0.25
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * len(names)), 4))
    for i, (label, values) in enumerate(metrics.items()):
        ax.bar(x + (i - 1) * width, values, width, label=label)
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("percent")
    ax.set_ylim(0, 100)
    ax.legend()
    fig.tight_layout()
    out = Path(out_path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
