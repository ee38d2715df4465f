from .snippets import (
    KnowledgeSnippet,
    Validation,
    extract_knowledge,
    is_refusal,
    parse_snippet_list,
    validate_snippet,
    with_validation,
)
from .summarize import RawEntry, RawSections, harvest_sources, parse_sections, summarize
from .provenance import attach_sources, token_set, token_set_cosine
from .document import ApiDocument, DocEntry
from .generate import GenerationTrace, PipelineConfig, generate_document
from .markdown import EMPTY_SECTION_LINE, render_markdown

__all__ = [
    "KnowledgeSnippet",
    "Validation",
    "extract_knowledge",
    "is_refusal",
    "parse_snippet_list",
    "validate_snippet",
    "with_validation",
    "RawEntry",
    "RawSections",
    "harvest_sources",
    "parse_sections",
    "summarize",
    "attach_sources",
    "token_set",
    "token_set_cosine",
    "ApiDocument",
    "DocEntry",
    "GenerationTrace",
    "PipelineConfig",
    "generate_document",
    "EMPTY_SECTION_LINE",
    "render_markdown",
]
