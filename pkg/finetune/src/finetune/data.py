"""Line-JSON dataset loading.

Each line is one record: {"query": <question title>, "positives": [<answer
text>, ...]}. This is the documentation pipeline's export format; it is the
only coupling between the two packages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import BadDataset


@dataclass(frozen=True)
class Example:
    query: str
    positives: tuple[str, ...]


def load_dataset(path: str | Path) -> list[Example]:
    examples = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BadDataset(f"{path}:{lineno}: not JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise BadDataset(f"{path}:{lineno}: record must be an object")
            query = record.get("query")
            positives = record.get("positives")
            if not isinstance(query, str) or not query:
                raise BadDataset(f"{path}:{lineno}: missing or empty query")
            if (
                not isinstance(positives, list)
                or not positives
                or not all(isinstance(p, str) and p for p in positives)
            ):
                raise BadDataset(f"{path}:{lineno}: positives must be non-empty strings")
            examples.append(Example(query=query, positives=tuple(positives)))
    return examples


def training_pairs(examples: list[Example]) -> list[tuple[str, str]]:
    """Flatten to (query, positive) pairs; one pair per positive passage."""
    return [(ex.query, positive) for ex in examples for positive in ex.positives]
