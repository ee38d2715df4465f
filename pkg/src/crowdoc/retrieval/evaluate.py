"""Retrieval accuracy evaluation against human relevance labels."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MissingLabel
from .index import ScoredPost
from .knowledge import KnowledgeType


@dataclass(frozen=True)
class RelevanceLabel:
    api: str
    knowledge_type: KnowledgeType
    post_id: int
    relevant: bool


@dataclass
class RetrievalAccuracy:
    """Relevant-returned / total-returned, per knowledge type and overall."""

    per_type: dict[KnowledgeType, float]
    per_type_counts: dict[KnowledgeType, tuple[int, int]]
    overall: float
    overall_counts: tuple[int, int]


def evaluate_retrieval(
    results: dict[tuple[str, KnowledgeType], list[ScoredPost]],
    labels: list[RelevanceLabel],
) -> RetrievalAccuracy:
    """Accuracy per knowledge type = relevant returned / total returned
    across APIs; every returned post must carry a label."""
    label_map = {(l.api, l.knowledge_type, l.post_id): l.relevant for l in labels}
    relevant: dict[KnowledgeType, int] = {kt: 0 for kt in KnowledgeType}
    total: dict[KnowledgeType, int] = {kt: 0 for kt in KnowledgeType}
    for (api, ktype), scored in results.items():
        for sp in scored:
            key = (api, ktype, sp.post_id)
            if key not in label_map:
                raise MissingLabel(api, ktype.value, sp.post_id)
            total[ktype] += 1
            if label_map[key]:
                relevant[ktype] += 1
    per_type = {
        kt: (relevant[kt] / total[kt]) if total[kt] else 0.0 for kt in KnowledgeType
    }
    all_rel = sum(relevant.values())
    all_tot = sum(total.values())
    return RetrievalAccuracy(
        per_type=per_type,
        per_type_counts={kt: (relevant[kt], total[kt]) for kt in KnowledgeType},
        overall=(all_rel / all_tot) if all_tot else 0.0,
        overall_counts=(all_rel, all_tot),
    )


def render_retrieval_table(named: list[tuple[str, RetrievalAccuracy]]) -> str:
    """Render one column per named method, one row per knowledge type,
    plus an Overall row (one-decimal percentages)."""
    names = [name for name, _ in named]
    width = max([len("Knowledge")] + [len(kt.value) for kt in KnowledgeType]) + 2
    col = max(8, max(len(n) for n in names) + 2) if names else 8
    lines = ["Knowledge".ljust(width) + "".join(n.rjust(col) for n in names)]
    for kt in KnowledgeType:
        row = kt.value.ljust(width)
        for _, acc in named:
            row += f"{acc.per_type[kt] * 100:.1f}%".rjust(col)
        lines.append(row)
    row = "Overall".ljust(width)
    for _, acc in named:
        row += f"{acc.overall * 100:.1f}%".rjust(col)
    lines.append(row)
    return "\n".join(lines) + "\n"
