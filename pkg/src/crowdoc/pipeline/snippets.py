"""Knowledge extraction and validation: one LLM call per post, one per
snippet, with refusal handling and a conservative yes/no parse."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace

from ..corpus.models import Post
from ..errors import UnparseableResponse
from ..llm.client import LlmClient, LlmRequest
from ..llm.prompts import render_extraction_prompt, render_validation_prompt
from ..retrieval.knowledge import (
    ApiProfile,
    KNOWLEDGE_TYPE_DESCRIPTIONS,
    KNOWLEDGE_TYPE_EXAMPLES,
    KnowledgeType,
)

REFUSAL_PREFIX = "no such knowledge"


class Validation(enum.Enum):
    UNCHECKED = "unchecked"
    ACCEPTED = "accepted"
    REJECTED = "rejected"


@dataclass(frozen=True)
class KnowledgeSnippet:
    text: str
    api: str
    knowledge_type: KnowledgeType
    source_post_id: int
    validated: Validation = Validation.UNCHECKED


_ITEM_MARKER = re.compile(r"^(\d+[.)]|[-*])\s+")


def parse_snippet_list(text: str) -> list[str]:
    """Parse an LLM list response into items.

    When any line carries a marker (N., N), -, *), marker lines start items
    and the rest continue the previous item. When no line does, each
    unindented non-blank line is its own item and indented lines continue.
    Empty items are dropped.
    """
    lines = text.split("\n")
    has_markers = any(_ITEM_MARKER.match(line.strip()) for line in lines)
    items: list[list[str]] = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        marker = _ITEM_MARKER.match(stripped)
        if has_markers:
            starts_item = marker is not None
        else:
            starts_item = not line[:1].isspace()
        body = _ITEM_MARKER.sub("", stripped, count=1) if marker else stripped
        if starts_item or not items:
            items.append([body])
        else:
            items[-1].append(body)
    return [joined for joined in (" ".join(parts).strip() for parts in items) if joined]


def is_refusal(response_text: str) -> bool:
    return response_text.strip().lower().startswith(REFUSAL_PREFIX)


def extract_knowledge(
    client: LlmClient,
    model: str,
    api: ApiProfile,
    ktype: KnowledgeType,
    post: Post,
    temperature: float = 0.8,
    ktype_descriptions=KNOWLEDGE_TYPE_DESCRIPTIONS,
    ktype_examples=KNOWLEDGE_TYPE_EXAMPLES,
) -> list[KnowledgeSnippet]:
    """Run the extraction prompt on one retrieved post.

    A "No such knowledge" reply discards the post (retrieval false
    positive); otherwise the response must parse to at least one item.
    """
    messages = render_extraction_prompt(
        api, ktype, ktype_descriptions[ktype], ktype_examples[ktype], post.body_text
    )
    request = LlmRequest(model=model, messages=tuple(messages), temperature=temperature)
    response = client.complete(request)
    if is_refusal(response.text):
        return []
    items = parse_snippet_list(response.text)
    if not items:
        raise UnparseableResponse(
            f"extraction response for post {post.id} is neither a refusal nor a list"
        )
    return [
        KnowledgeSnippet(
            text=item,
            api=api.name,
            knowledge_type=ktype,
            source_post_id=post.id,
        )
        for item in items
    ]


def validate_snippet(
    client: LlmClient,
    model: str,
    api: ApiProfile,
    snippet: KnowledgeSnippet,
    post: Post,
    temperature: float = 0.8,
) -> Validation:
    """Self-check one snippet against its source post. Any answer that is
    not a clear "Yes" is rejected: hallucination cost exceeds recall cost."""
    messages = render_validation_prompt(api, snippet.text, post.body_text)
    request = LlmRequest(model=model, messages=tuple(messages), temperature=temperature)
    response = client.complete(request)
    answer = response.text.strip().lower()
    if answer.startswith("yes"):
        return Validation.ACCEPTED
    return Validation.REJECTED


def with_validation(snippet: KnowledgeSnippet, status: Validation) -> KnowledgeSnippet:
    return replace(snippet, validated=status)
