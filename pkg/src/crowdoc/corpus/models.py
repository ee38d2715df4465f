"""Core corpus data types: raw dump rows, normalized posts, filters."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timezone


class PostKind(enum.Enum):
    QUESTION = "question"
    ANSWER = "answer"


@dataclass(frozen=True)
class RawPostRow:
    """One <row> of a Stack Exchange Posts dump, attributes as-is."""

    id: int
    post_type_id: int
    parent_id: int | None
    score: int
    tags: str | None
    title: str | None
    body_html: str
    creation_date: datetime


@dataclass(frozen=True)
class Post:
    """A normalized question or answer post."""

    id: int
    kind: PostKind
    parent_id: int | None
    score: int
    tags: frozenset[str]
    title: str | None
    body_text: str
    creation_date: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "parent_id": self.parent_id,
            "score": self.score,
            "tags": sorted(self.tags),
            "title": self.title,
            "body_text": self.body_text,
            "creation_date": self.creation_date.isoformat(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Post":
        return cls(
            id=d["id"],
            kind=PostKind(d["kind"]),
            parent_id=d["parent_id"],
            score=d["score"],
            tags=frozenset(d["tags"]),
            title=d["title"],
            body_text=d["body_text"],
            creation_date=datetime.fromisoformat(d["creation_date"]),
        )


@dataclass
class CorpusFilter:
    """Predicate bundle for selecting posts.

    required_tags is any-match; empty means no tag constraint. Answers are
    matched against their parent question's tags.
    """

    required_tags: frozenset[str] = frozenset()
    min_score: int = 0
    kinds: frozenset[PostKind] = frozenset({PostKind.QUESTION, PostKind.ANSWER})
    date_window: tuple[datetime, datetime] | None = None

    def __post_init__(self):
        self.required_tags = frozenset(t.lower() for t in self.required_tags)
        self.kinds = frozenset(self.kinds)
        if self.date_window is not None:
            start, end = self.date_window
            if start > end:
                raise ValueError("date_window start must be <= end")


@dataclass
class ParseStats:
    """Counters surfaced in the ingestion summary."""

    rows_seen: int = 0
    rows_yielded: int = 0
    skipped_type: int = 0
    skipped_missing_attr: int = 0
    orphaned_answers: int = 0


def utc(dt: datetime) -> datetime:
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)
