"""Export the contrastive fine-tuning dataset: question titles as queries,
high-score answers as positives. Negatives are in-batch by construction
and therefore not stored."""

from __future__ import annotations

import json
from datetime import timedelta
from pathlib import Path
from typing import Iterator

from ..corpus.models import CorpusFilter, PostKind
from ..corpus.store import PostStore

FIVE_YEARS = timedelta(days=5 * 365)


def finetune_examples(store: PostStore, flt: CorpusFilter | None = None) -> Iterator[dict]:
    """Yield {query, positives} records, ascending question id.

    A question is exported when it has a title and at least one answer with
    score >= min_score (default 5) created inside the date window (default:
    the most recent five years present in the store).
    """
    min_score = flt.min_score if flt is not None else 5
    window = flt.date_window if flt is not None else None
    if window is None:
        newest = None
        for post in store:
            if newest is None or post.creation_date > newest:
                newest = post.creation_date
        if newest is None:
            return
        window = (newest - FIVE_YEARS, newest)
    start, end = window
    for qid in store.question_ids():
        question = store.lookup(qid)
        if not question.title:
            continue
        if not (start <= question.creation_date <= end):
            continue
        positives = [
            answer.body_text
            for answer in store.answers_of(qid)
            if answer.score >= min_score
        ]
        if positives:
            yield {"query": question.title, "positives": positives}


def export_finetune_dataset(
    store: PostStore, out_path: str | Path, flt: CorpusFilter | None = None
) -> int:
    """Write one JSON object per line; returns the record count."""
    count = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for record in finetune_examples(store, flt):
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            count += 1
    return count
