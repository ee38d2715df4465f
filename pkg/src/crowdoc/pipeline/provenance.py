"""Provenance re-attachment for summarized entries.

The summarizer is asked to echo [src:] markers, but when it paraphrases
them away we fall back to token-set cosine similarity against the accepted
snippets of the same knowledge type.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

from .snippets import KnowledgeSnippet

ATTACH_THRESHOLD = 0.5
FALLBACK_THRESHOLD = 0.3

_WORD = re.compile(r"[a-z0-9]+")


def token_set(text: str) -> frozenset[str]:
    return frozenset(_WORD.findall(text.lower()))


def token_set_cosine(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / math.sqrt(len(a) * len(b))


def attach_sources(
    entry_text: str, candidates: Sequence[KnowledgeSnippet]
) -> frozenset[int]:
    """Source ids for one summarized entry.

    All snippets with similarity >= 0.5 contribute; failing that, the single
    best match >= 0.3; failing that, the entry is unsourced (empty set).
    """
    entry_tokens = token_set(entry_text)
    scored = [
        (token_set_cosine(entry_tokens, token_set(s.text)), s.source_post_id)
        for s in candidates
    ]
    strong = {pid for sim, pid in scored if sim >= ATTACH_THRESHOLD}
    if strong:
        return frozenset(strong)
    best = max(scored, default=(0.0, None), key=lambda t: t[0])
    if best[1] is not None and best[0] >= FALLBACK_THRESHOLD:
        return frozenset({best[1]})
    return frozenset()
