"""Summarization call and tolerant parsing of the sectioned response."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from ..llm.client import LlmClient, LlmRequest
from ..llm.prompts import render_summarization_prompt
from ..retrieval.knowledge import ApiProfile, KNOWLEDGE_TYPE_DESCRIPTIONS, KnowledgeType
from .snippets import KnowledgeSnippet, parse_snippet_list

_SRC = re.compile(r"\[src:\s*([0-9,\s]+)\]")


@dataclass
class RawEntry:
    """One summarized list item before provenance resolution."""

    text: str
    harvested_ids: frozenset[int]


@dataclass
class RawSections:
    sections: dict[KnowledgeType, list[RawEntry]]
    missing: list[KnowledgeType] = field(default_factory=list)


def _heading_ktype(line: str) -> KnowledgeType | None:
    """Match a knowledge-type heading, tolerating #, numbering, bold
    markers, case, and a trailing colon or 'knowledge' suffix."""
    cleaned = line.strip()
    cleaned = re.sub(r"^#+\s*", "", cleaned)
    cleaned = re.sub(r"^\d+[.)]\s*", "", cleaned)
    cleaned = cleaned.strip("*_ \t")
    cleaned = re.sub(r"\s*:$", "", cleaned)
    cleaned = re.sub(r"\s+knowledge$", "", cleaned, flags=re.IGNORECASE)
    for kt in KnowledgeType:
        if cleaned.lower() == kt.value.lower():
            return kt
    return None


def harvest_sources(text: str) -> tuple[str, frozenset[int]]:
    """Pull [src:...] markers out of an entry, returning the cleaned text."""
    ids: set[int] = set()
    for match in _SRC.finditer(text):
        for piece in match.group(1).split(","):
            piece = piece.strip()
            if piece:
                ids.add(int(piece))
    cleaned = _SRC.sub("", text)
    cleaned = re.sub(r"\s{2,}", " ", cleaned).strip()
    return cleaned, frozenset(ids)


def parse_sections(response_text: str) -> RawSections:
    """Split the response at knowledge-type headings; entries are the list
    items under each heading. Unrecognized sections become empty (the
    caller records them as a warning), never an abort."""
    chunks: dict[KnowledgeType, list[str]] = {}
    current: KnowledgeType | None = None
    for line in response_text.split("\n"):
        kt = _heading_ktype(line)
        if kt is not None:
            current = kt
            chunks.setdefault(kt, [])
        elif current is not None:
            chunks[current].append(line)
    sections: dict[KnowledgeType, list[RawEntry]] = {}
    missing: list[KnowledgeType] = []
    for kt in KnowledgeType:
        if kt not in chunks:
            missing.append(kt)
            sections[kt] = []
            continue
        entries = []
        for item in parse_snippet_list("\n".join(chunks[kt])):
            text, ids = harvest_sources(item)
            if text:
                entries.append(RawEntry(text=text, harvested_ids=ids))
        sections[kt] = entries
    return RawSections(sections=sections, missing=missing)


def summarize(
    client: LlmClient,
    model: str,
    api: ApiProfile,
    accepted: Sequence[KnowledgeSnippet],
    temperature: float = 0.8,
    ktype_descriptions=KNOWLEDGE_TYPE_DESCRIPTIONS,
) -> RawSections:
    """One summarization call over the whole accepted pool, all types."""
    messages = render_summarization_prompt(api, ktype_descriptions, accepted)
    request = LlmRequest(model=model, messages=tuple(messages), temperature=temperature)
    response = client.complete(request)
    return parse_sections(response.text)
