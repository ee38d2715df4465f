"""Inverted index and Okapi BM25 ranking over the post store."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..corpus.filters import effective_tags, post_passes
from ..corpus.models import CorpusFilter, Post
from ..corpus.store import PostStore
from ..errors import EmptyQuery
from .knowledge import RetrievalQuery
from .tokenizer import TOKENIZER_VERSION, tokenize

K1 = 1.2
B = 0.75


@dataclass(frozen=True)
class ScoredPost:
    post_id: int
    score: float


@dataclass
class InvertedIndex:
    postings: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    doc_lengths: dict[int, int] = field(default_factory=dict)
    tokenizer_version: str = TOKENIZER_VERSION

    @property
    def doc_count(self) -> int:
        return len(self.doc_lengths)

    @property
    def avg_doc_length(self) -> float:
        if not self.doc_lengths:
            return 0.0
        return sum(self.doc_lengths.values()) / len(self.doc_lengths)

    def idf(self, term: str) -> float:
        df = len(self.postings.get(term, ()))
        if df == 0:
            return 0.0
        n = self.doc_count
        return math.log(1.0 + (n - df + 0.5) / (df + 0.5))

    def save(self, directory: str | Path) -> None:
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        (out / "index.json").write_text(
            json.dumps(
                {
                    "version": 1,
                    "tokenizer_version": self.tokenizer_version,
                    "doc_lengths": self.doc_lengths,
                    "postings": {t: p for t, p in self.postings.items()},
                },
                sort_keys=True,
            ),
            encoding="utf-8",
        )

    @classmethod
    def load(cls, directory: str | Path) -> "InvertedIndex":
        data = json.loads((Path(directory) / "index.json").read_text("utf-8"))
        return cls(
            postings={
                t: [(int(i), int(f)) for i, f in plist]
                for t, plist in data["postings"].items()
            },
            doc_lengths={int(k): v for k, v in data["doc_lengths"].items()},
            tokenizer_version=data["tokenizer_version"],
        )


def index_text(post: Post) -> str:
    if post.title:
        return f"{post.title}\n{post.body_text}"
    return post.body_text


def build_index(store: PostStore, scope: CorpusFilter | None = None) -> InvertedIndex:
    """Index body text (and title) of posts passing scope; answers resolve
    tags through their parent question."""
    question_tags = store.question_tag_map() if scope and scope.required_tags else {}
    docs: Iterable[Post] = iter(store)
    index = InvertedIndex()
    for post in docs:
        if scope is not None:
            tags = effective_tags(post, question_tags)
            if not post_passes(post, scope, tags):
                continue
        tokens = tokenize(index_text(post))
        index.doc_lengths[post.id] = len(tokens)
        counts: dict[str, int] = {}
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        for term, tf in counts.items():
            index.postings.setdefault(term, []).append((post.id, tf))
    return index


def bm25_search(
    index: InvertedIndex, query: RetrievalQuery | str, k: int = 10
) -> list[ScoredPost]:
    """Rank posts by Okapi BM25 (k1=1.2, b=0.75, non-negative idf).

    Returns at most k posts with positive score, sorted by score descending
    and post id ascending for ties.
    """
    text = query.text if isinstance(query, RetrievalQuery) else query
    terms = tokenize(text)
    if not terms:
        raise EmptyQuery(f"query {text!r} tokenizes to nothing")
    avgdl = index.avg_doc_length
    scores: dict[int, float] = {}
    for term in terms:
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = index.idf(term)
        for post_id, tf in plist:
            dl = index.doc_lengths[post_id]
            denom = tf + K1 * (1.0 - B + B * dl / avgdl)
            scores[post_id] = scores.get(post_id, 0.0) + idf * tf * (K1 + 1.0) / denom
    ranked = sorted(
        (ScoredPost(pid, s) for pid, s in scores.items() if s > 0.0),
        key=lambda sp: (-sp.score, sp.post_id),
    )
    return ranked[:k]
