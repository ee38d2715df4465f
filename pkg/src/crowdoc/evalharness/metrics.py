"""Document-quality metrics computed from human-authored label files.

The harness never labels correctness itself; it aggregates labels into the
correctness / uniqueness / overlap / snippet-count quadruple. Uniqueness
and overlap are computed over correct snippets only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import UnlabeledEntry
from ..pipeline.document import ApiDocument

EntryId = tuple[str, str, int]  # (api, section, index)


@dataclass(frozen=True)
class SnippetLabel:
    api: str
    section: str
    index: int
    correct: bool
    duplicate_of: EntryId | None = None
    overlaps_official: bool = False

    @property
    def entry_id(self) -> EntryId:
        return (self.api, self.section, self.index)

    @classmethod
    def from_dict(cls, d: dict) -> "SnippetLabel":
        dup = d.get("duplicate_of")
        return cls(
            api=d["api"],
            section=d["section"],
            index=d["index"],
            correct=d["correct"],
            duplicate_of=(dup["api"], dup["section"], dup["index"]) if dup else None,
            overlaps_official=d.get("overlaps_official", False),
        )


def load_labels(path: str | Path) -> list[SnippetLabel]:
    labels = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                labels.append(SnippetLabel.from_dict(json.loads(line)))
    return labels


@dataclass
class MetricsReport:
    correctness: float
    uniqueness: float
    overlap: float
    snippet_count: float
    document_count: int

    def __post_init__(self):
        for name in ("correctness", "uniqueness", "overlap"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


def compute_metrics(
    documents: Sequence[ApiDocument], labels: Iterable[SnippetLabel]
) -> MetricsReport:
    """Aggregate labels over a group of documents.

    correctness = correct / total; uniqueness = non-duplicate correct /
    correct; overlap = officially-covered correct / correct; snippet_count
    = total entries / document count. Every entry must carry a label.
    """
    label_map = {l.entry_id: l for l in labels}
    total = 0
    correct = 0
    unique_correct = 0
    overlapping_correct = 0
    for doc in documents:
        for ktype, index, _entry in doc.entries():
            entry_id = (doc.api.name, ktype.value, index)
            if entry_id not in label_map:
                raise UnlabeledEntry(entry_id)
            label = label_map[entry_id]
            total += 1
            if label.correct:
                correct += 1
                if label.duplicate_of is None:
                    unique_correct += 1
                if label.overlaps_official:
                    overlapping_correct += 1
    doc_count = len(documents)
    return MetricsReport(
        correctness=correct / total if total else 0.0,
        uniqueness=unique_correct / correct if correct else 0.0,
        overlap=overlapping_correct / correct if correct else 0.0,
        snippet_count=total / doc_count if doc_count else 0.0,
        document_count=doc_count,
    )
