"""Markdown rendering of a generated API document."""

from __future__ import annotations

from ..retrieval.knowledge import KnowledgeType
from .document import ApiDocument

EMPTY_SECTION_LINE = "_No community knowledge found for this category._"


def render_markdown(document: ApiDocument) -> str:
    meta = document.metadata
    lines = [
        "---",
        f"api: {document.api.name}",
        f"library: {document.api.library}",
        f"model: {meta.get('model', '')}",
        f"temperature: {meta.get('temperature', '')}",
        f"backend: {meta.get('backend', '')}",
        f"generated: {meta.get('generated', '')}",
        "---",
        "",
    ]
    for ktype in KnowledgeType:
        lines.append(f"## {ktype.value}")
        lines.append("")
        entries = document.sections[ktype]
        if not entries:
            lines.append(EMPTY_SECTION_LINE)
        else:
            for entry in entries:
                if entry.provenance:
                    sources = ", ".join(str(i) for i in sorted(entry.provenance))
                    lines.append(f"- {entry.text} (sources: {sources})")
                else:
                    lines.append(f"- {entry.text} (unsourced)")
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"
