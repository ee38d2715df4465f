"""Knowledge-type taxonomy, API profiles, and query templating."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping


class KnowledgeType(enum.Enum):
    """The seven categories of API knowledge, in document order."""

    FUNCTIONALITY = "Functionality"
    CONCEPT = "Concept"
    PATTERN = "Pattern"
    DIRECTIVE = "Directive"
    PERFORMANCE = "Performance"
    ENVIRONMENT = "Environment"
    ALTERNATIVE = "Alternative"

    @classmethod
    def ordered(cls) -> tuple["KnowledgeType", ...]:
        return tuple(cls)

    @classmethod
    def parse(cls, name: str) -> "KnowledgeType":
        return cls(name.strip().capitalize())


# Built-in one-sentence descriptions of each knowledge category, used in
# prompts. Overridable via config.
KNOWLEDGE_TYPE_DESCRIPTIONS: dict[KnowledgeType, str] = {
    KnowledgeType.FUNCTIONALITY: "Functionality knowledge describes the actions or operations an API can perform.",
    KnowledgeType.CONCEPT: "Concept knowledge refers to the abstract ideas and terminologies that an API aims to model.",
    KnowledgeType.PATTERN: "Pattern knowledge illustrates common use cases and code examples for using an API.",
    KnowledgeType.DIRECTIVE: "Directive knowledge provides guidelines on the proper use of an API, including best practices to follow and actions to avoid.",
    KnowledgeType.PERFORMANCE: "Performance knowledge refers to an API's time and memory efficiency.",
    KnowledgeType.ENVIRONMENT: "Environment knowledge specifies the necessary conditions, system requirements, or configurations under which an API can function correctly.",
    KnowledgeType.ALTERNATIVE: "Alternative knowledge refers to other APIs with similar functionality, which can be considered as replacements or complementary options.",
}

# Generic example snippets shown in the EXAMPLE KNOWLEDGE prompt field.
KNOWLEDGE_TYPE_EXAMPLES: dict[KnowledgeType, str] = {
    KnowledgeType.FUNCTIONALITY: "tf.gather is used to select tensor elements at specific indices.",
    KnowledgeType.CONCEPT: "A tf.Tensor models an immutable multi-dimensional array with a fixed dtype.",
    KnowledgeType.PATTERN: "To read a file line by line, wrap it in a BufferedReader and call readLine() in a loop.",
    KnowledgeType.DIRECTIVE: "Always close a Cursor after use to avoid leaking database resources.",
    KnowledgeType.PERFORMANCE: "StringBuilder.append is much faster than repeated String concatenation in a loop.",
    KnowledgeType.ENVIRONMENT: "Fragment.requireContext() requires the fragment to be attached to an activity.",
    KnowledgeType.ALTERNATIVE: "Glide can be used instead of Picasso for image loading on Android.",
}

DEFAULT_QUERY_TEMPLATES: dict[KnowledgeType, str] = {
    KnowledgeType.FUNCTIONALITY: "What can {api} do and what operations does it perform?",
    KnowledgeType.CONCEPT: "What concepts and terminology does {api} model?",
    KnowledgeType.PATTERN: "How do I use {api}? Code examples and common use cases",
    KnowledgeType.DIRECTIVE: "Best practices, caveats, and things to avoid when using {api}",
    KnowledgeType.PERFORMANCE: "Time and memory performance of {api}",
    KnowledgeType.ENVIRONMENT: "What versions, configurations, or system requirements does {api} need?",
    KnowledgeType.ALTERNATIVE: "What alternatives can replace {api}?",
}


@dataclass(frozen=True)
class ApiProfile:
    """The target of one generated document: an API within a library tag."""

    name: str
    library: str
    description: str = ""

    def __post_init__(self):
        if not self.name or not self.library:
            raise ValueError("ApiProfile name and library must be non-empty")


@dataclass(frozen=True)
class RetrievalQuery:
    api: ApiProfile
    knowledge_type: KnowledgeType
    text: str


def build_query(
    api: ApiProfile,
    ktype: KnowledgeType,
    templates: Mapping[KnowledgeType, str] | None = None,
) -> RetrievalQuery:
    """Render the per-knowledge-type query template for one API."""
    template = (templates or DEFAULT_QUERY_TEMPLATES).get(
        ktype, DEFAULT_QUERY_TEMPLATES[ktype]
    )
    return RetrievalQuery(api=api, knowledge_type=ktype, text=template.format(api=api.name))
