"""Automatic overlap suggestions: a labeling aid, never a replacement for
human judgment. Every output is marked as requiring confirmation."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..pipeline.document import ApiDocument
from ..retrieval.knowledge import KnowledgeType

SUGGEST_THRESHOLD = 0.5
DISCLAIMER = "suggested, requires human confirmation"

_WORD = re.compile(r"[a-z0-9]+")
_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")


def _tokens(text: str) -> list[str]:
    return _WORD.findall(text.lower())


def _ngrams(tokens: list[str], n: int = 4) -> set[tuple[str, ...]]:
    if len(tokens) < n:
        # Short entries fall back to their full token sequence as one gram.
        return {tuple(tokens)} if tokens else set()
    return {tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)}


def containment(entry_text: str, sentence: str) -> float:
    """Fraction of the entry's token 4-grams present in the sentence."""
    entry_grams = _ngrams(_tokens(entry_text))
    if not entry_grams:
        return 0.0
    n = len(next(iter(entry_grams)))
    sentence_grams = _ngrams(_tokens(sentence), n=n)
    return len(entry_grams & sentence_grams) / len(entry_grams)


@dataclass(frozen=True)
class OverlapSuggestion:
    api: str
    section: str
    index: int
    score: float
    suggested_overlap: bool
    note: str = DISCLAIMER


def estimate_overlap(document: ApiDocument, official_text: str) -> list[OverlapSuggestion]:
    """Per entry, max containment over official-doc sentences; scores at or
    above 0.5 are suggested as overlapping."""
    sentences = [s.strip() for s in _SENTENCE_SPLIT.split(official_text) if s.strip()]
    suggestions = []
    for ktype, index, entry in document.entries():
        score = max((containment(entry.text, s) for s in sentences), default=0.0)
        suggestions.append(
            OverlapSuggestion(
                api=document.api.name,
                section=ktype.value,
                index=index,
                score=score,
                suggested_overlap=score >= SUGGEST_THRESHOLD,
            )
        )
    return suggestions
