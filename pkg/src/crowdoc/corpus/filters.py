"""Post filtering with tag inheritance from parent questions."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .models import CorpusFilter, ParseStats, Post, PostKind


def effective_tags(post: Post, question_tags: Mapping[int, frozenset[str]]) -> frozenset[str] | None:
    """Tags used for filtering: a question's own tags, an answer's parent
    question's tags. None when an answer's parent is unknown."""
    if post.kind is PostKind.QUESTION:
        return post.tags
    if post.parent_id is not None and post.parent_id in question_tags:
        return question_tags[post.parent_id]
    return None


def post_passes(post: Post, flt: CorpusFilter, tags: frozenset[str] | None) -> bool:
    if post.kind not in flt.kinds:
        return False
    if post.score < flt.min_score:
        return False
    if flt.date_window is not None:
        start, end = flt.date_window
        if not (start <= post.creation_date <= end):
            return False
    if flt.required_tags:
        if tags is None or not (tags & flt.required_tags):
            return False
    return True


def filter_posts(
    posts: Iterable[Post],
    flt: CorpusFilter,
    stats: ParseStats | None = None,
    question_tags: Mapping[int, frozenset[str]] | None = None,
) -> Iterator[Post]:
    """Lazily yield posts passing the filter.

    Answer tags resolve through question_tags when given (store-assisted);
    otherwise a tag map is accumulated on the fly, which works because dump
    order puts questions before their answers. Answers whose parent cannot
    be resolved are excluded when a tag constraint is active and counted
    as orphaned.
    """
    seen: dict[int, frozenset[str]] = dict(question_tags) if question_tags else {}
    for post in posts:
        if post.kind is PostKind.QUESTION and question_tags is None:
            seen[post.id] = post.tags
        tags = effective_tags(post, seen)
        if post.kind is PostKind.ANSWER and tags is None and flt.required_tags:
            if stats is not None:
                stats.orphaned_answers += 1
            continue
        if post_passes(post, flt, tags):
            yield post
