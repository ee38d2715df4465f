"""Prompt templates for the extraction, validation, and summarization calls.

Each prompt is one system message (the fixed CONTEXT) plus one user message
made of labeled sections. Section bodies are indented two spaces so post
content can never fabricate a section header at column zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import EmptyField, NothingToSummarize
from ..retrieval.knowledge import ApiProfile, KnowledgeType


@dataclass(frozen=True)
class ChatMessage:
    role: str  # "system" or "user"
    content: str

    def __post_init__(self):
        if not self.content:
            raise EmptyField("content")


CONTEXT = (
    "You are an API expert who excels at extracting, validating, and "
    "summarizing API knowledge from Stack Overflow posts as instructed."
)

SRC_MARKER = "[src:{post_id}]"


def _indent(body: str) -> str:
    return "\n".join("  " + line for line in body.split("\n"))


def _sections(pairs: Sequence[tuple[str, str]]) -> str:
    blocks = [f"{header}\n{_indent(body)}" for header, body in pairs]
    return "\n\n".join(blocks)


def _require(value: str, field: str) -> str:
    if not value or not value.strip():
        raise EmptyField(field)
    return value


def render_extraction_prompt(
    api: ApiProfile,
    ktype: KnowledgeType,
    ktype_description: str,
    example: str,
    post_text: str,
) -> list[ChatMessage]:
    _require(api.description, "api description")
    _require(ktype_description, "knowledge type description")
    _require(example, "example knowledge")
    _require(post_text, "post")
    instruction = (
        f"Extract {ktype.value.lower()} knowledge of {api.name} from this post, "
        "including knowledge you can infer from this post. If the post does "
        'not contain such knowledge, reply "No such knowledge" and nothing more.'
    )
    user = _sections(
        [
            ("INSTRUCTION", instruction),
            ("API DESCRIPTION", api.description),
            ("KNOWLEDGE TYPE DESCRIPTION", ktype_description),
            ("EXAMPLE KNOWLEDGE", example),
            ("POST", post_text),
        ]
    )
    return [ChatMessage("system", CONTEXT), ChatMessage("user", user)]


def render_validation_prompt(
    api: ApiProfile, snippet_text: str, post_text: str
) -> list[ChatMessage]:
    _require(api.description, "api description")
    _require(snippet_text, "knowledge")
    _require(post_text, "post")
    instruction = (
        f"Can this knowledge of {api.name} be extracted from this post? "
        'If so, reply "Yes". If not, reply "No". '
        'Just reply "Yes" or "No" and nothing more.'
    )
    user = _sections(
        [
            ("INSTRUCTION", instruction),
            ("API DESCRIPTION", api.description),
            ("EXTRACTED KNOWLEDGE", snippet_text),
            ("POST", post_text),
        ]
    )
    return [ChatMessage("system", CONTEXT), ChatMessage("user", user)]


def render_summarization_prompt(
    api: ApiProfile,
    ktype_descriptions: Mapping[KnowledgeType, str],
    snippets: Sequence,  # KnowledgeSnippet-like: .text, .knowledge_type, .source_post_id
) -> list[ChatMessage]:
    _require(api.description, "api description")
    if not snippets:
        raise NothingToSummarize(f"no accepted snippets for {api.name}")
    instruction = (
        f"Summarize these knowledge snippets regarding {api.name} into a "
        "concise and accurate list. Focus on the seven types of knowledge as "
        "described below. For each type, create a section in the final API "
        "document. Keep the source markers like [src:123] attached to each "
        "item you produce, carrying over the markers of every snippet the "
        "item came from."
    )
    descriptions = "\n".join(
        ktype_descriptions[kt] for kt in KnowledgeType if kt in ktype_descriptions
    )
    lines: list[str] = []
    number = 0
    for kt in KnowledgeType:
        group = [s for s in snippets if s.knowledge_type is kt]
        if not group:
            continue
        lines.append(f"{kt.value}:")
        for snippet in group:
            number += 1
            marker = SRC_MARKER.format(post_id=snippet.source_post_id)
            lines.append(f"{number}. {snippet.text} {marker}")
    user = _sections(
        [
            ("INSTRUCTION", instruction),
            ("API DESCRIPTION", api.description),
            ("ALL KNOWLEDGE TYPE DESCRIPTIONS", descriptions),
            ("KNOWLEDGE LIST", "\n".join(lines)),
        ]
    )
    return [ChatMessage("system", CONTEXT), ChatMessage("user", user)]
