"""End-to-end document generation: retrieve, extract, validate, summarize,
re-attach provenance, assemble.

All per-post LLM calls may run with bounded parallelism; results are
re-assembled in deterministic order so concurrency never changes output.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..corpus.store import PostStore
from ..errors import CrowdocError, NoPostsRetrieved
from ..llm.client import LlmClient
from ..retrieval.index import ScoredPost
from ..retrieval.knowledge import ApiProfile, KnowledgeType, RetrievalQuery, build_query
from .document import ApiDocument, DocEntry
from .provenance import attach_sources
from .snippets import (
    KnowledgeSnippet,
    Validation,
    extract_knowledge,
    validate_snippet,
    with_validation,
)
from .summarize import summarize

Searcher = Callable[[RetrievalQuery, int], list[ScoredPost]]


@dataclass
class PipelineConfig:
    model: str
    temperature: float = 0.8
    k: int = 10
    backend: str = "bm25"
    policy: str = "strict"  # strict drops unsourced entries
    parallelism: int = 4
    query_templates: dict[KnowledgeType, str] | None = None
    timestamp: str | None = None


@dataclass
class GenerationTrace:
    """Audit record written alongside the document."""

    retrieval: dict[str, list[dict]] = field(default_factory=dict)
    calls: list[dict] = field(default_factory=list)
    snippets: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "retrieval": self.retrieval,
            "calls": sorted(self.calls, key=lambda c: c["hash"]),
            "snippets": self.snippets,
            "warnings": self.warnings,
        }


def _normalize_entry_text(text: str) -> str:
    return " ".join(text.lower().split()).rstrip(".")


def generate_document(
    api: ApiProfile,
    store: PostStore,
    searcher: Searcher,
    client: LlmClient,
    config: PipelineConfig,
) -> tuple[ApiDocument, GenerationTrace]:
    trace = GenerationTrace(
        config={
            "model": config.model,
            "temperature": config.temperature,
            "k": config.k,
            "backend": config.backend,
            "policy": config.policy,
        }
    )
    call_lock = threading.Lock()

    previous_observer = client.observer

    def observe(request, response):
        with call_lock:
            trace.calls.append(
                {"hash": request.hash, "response_chars": len(response.text)}
            )

    client.observer = observe
    try:
        document = _generate(api, store, searcher, client, config, trace)
    finally:
        client.observer = previous_observer
    return document, trace


def _generate(api, store, searcher, client, config, trace) -> ApiDocument:
    # Stage 1: retrieval, one query per knowledge type.
    retrieved: dict[KnowledgeType, list[ScoredPost]] = {}
    for ktype in KnowledgeType:
        query = build_query(api, ktype, config.query_templates)
        try:
            hits = searcher(query, config.k)
        except CrowdocError as exc:
            trace.warnings.append(f"retrieval failed for {ktype.value}: {exc}")
            hits = []
        retrieved[ktype] = hits
        trace.retrieval[ktype.value] = [
            {"post_id": sp.post_id, "score": round(sp.score, 9)} for sp in hits
        ]
    retrieved_ids = {sp.post_id for hits in retrieved.values() for sp in hits}
    if not retrieved_ids:
        raise NoPostsRetrieved(f"no posts retrieved for {api.name}")

    # Stage 2: extraction, one call per (knowledge type, post).
    tasks = [
        (ktype, store.lookup(sp.post_id))
        for ktype in KnowledgeType
        for sp in retrieved[ktype]
    ]

    def run_extract(task):
        ktype, post = task
        try:
            return extract_knowledge(
                client, config.model, api, ktype, post, config.temperature
            )
        except CrowdocError as exc:
            return exc

    with ThreadPoolExecutor(max_workers=max(1, config.parallelism)) as pool:
        extraction_results = list(pool.map(run_extract, tasks))

    snippets: list[KnowledgeSnippet] = []
    for (ktype, post), result in zip(tasks, extraction_results):
        if isinstance(result, Exception):
            trace.warnings.append(
                f"extraction failed for {ktype.value} post {post.id}: {result}"
            )
        else:
            snippets.extend(result)

    # Stage 3: validation, one call per snippet against its source post.
    def run_validate(snippet):
        try:
            return validate_snippet(
                client,
                config.model,
                api,
                snippet,
                store.lookup(snippet.source_post_id),
                config.temperature,
            )
        except CrowdocError as exc:
            return exc

    with ThreadPoolExecutor(max_workers=max(1, config.parallelism)) as pool:
        validation_results = list(pool.map(run_validate, snippets))

    accepted: list[KnowledgeSnippet] = []
    rejected_ids: set[tuple[str, int]] = set()
    for snippet, result in zip(snippets, validation_results):
        if isinstance(result, Exception):
            trace.warnings.append(
                f"validation failed for snippet from post {snippet.source_post_id}: {result}"
            )
            status = Validation.REJECTED
        else:
            status = result
        checked = with_validation(snippet, status)
        trace.snippets.append(
            {
                "text": snippet.text,
                "knowledge_type": snippet.knowledge_type.value,
                "source_post_id": snippet.source_post_id,
                "validated": status.value,
            }
        )
        if status is Validation.ACCEPTED:
            accepted.append(checked)
        else:
            rejected_ids.add((snippet.text, snippet.source_post_id))

    # Stage 4: one summarization call over the whole accepted pool.
    if not accepted:
        trace.warnings.append("no snippets survived extraction and validation")
        sections: dict[KnowledgeType, list[DocEntry]] = {kt: [] for kt in KnowledgeType}
        return _assemble(api, sections, config)

    raw = summarize(
        client, config.model, api, accepted, config.temperature
    )
    for kt in raw.missing:
        trace.warnings.append(f"summary response missing section: {kt.value}")

    sections = {}
    for ktype in KnowledgeType:
        candidates = [s for s in accepted if s.knowledge_type is ktype]
        entries: list[DocEntry] = []
        seen_texts: set[str] = set()
        for raw_entry in raw.sections[ktype]:
            # Harvested markers must point at posts actually retrieved this
            # run; anything else is treated as a hallucinated marker.
            provenance = frozenset(
                pid for pid in raw_entry.harvested_ids if pid in retrieved_ids
            )
            if not provenance:
                provenance = attach_sources(raw_entry.text, candidates)
            unsourced = not provenance
            if unsourced:
                if config.policy == "strict":
                    trace.warnings.append(
                        f"dropped unsourced entry in {ktype.value}: {raw_entry.text[:60]!r}"
                    )
                    continue
            key = _normalize_entry_text(raw_entry.text)
            if key in seen_texts:
                continue
            seen_texts.add(key)
            entries.append(
                DocEntry(text=raw_entry.text, provenance=provenance, unsourced=unsourced)
            )
        sections[ktype] = entries
    return _assemble(api, sections, config)


def _assemble(api, sections, config) -> ApiDocument:
    metadata = {
        "model": config.model,
        "temperature": config.temperature,
        "backend": config.backend,
        "policy": config.policy,
        "generated": config.timestamp or "unspecified",
    }
    return ApiDocument(api=api, sections=sections, metadata=metadata)
