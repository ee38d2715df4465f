from .metrics import MetricsReport, SnippetLabel, compute_metrics, load_labels
from .overlap import OverlapSuggestion, containment, estimate_overlap
from .report import render_comparison, render_metrics_figure

__all__ = [
    "MetricsReport",
    "SnippetLabel",
    "compute_metrics",
    "load_labels",
    "OverlapSuggestion",
    "containment",
    "estimate_overlap",
    "render_comparison",
    "render_metrics_figure",
]
