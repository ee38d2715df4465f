"""Document model: seven ordered sections of provenance-bearing entries."""

from __future__ import annotations

from dataclasses import dataclass, field
from ..retrieval.knowledge import ApiProfile, KnowledgeType


@dataclass(frozen=True)
class DocEntry:
    text: str
    provenance: frozenset[int]
    unsourced: bool = False

    def __post_init__(self):
        if not self.text:
            raise ValueError("entry text must be non-empty")
        if not self.provenance and not self.unsourced:
            raise ValueError("entry without provenance must be flagged unsourced")


@dataclass
class ApiDocument:
    api: ApiProfile
    sections: dict[KnowledgeType, list[DocEntry]]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ordered = {kt: self.sections.get(kt, []) for kt in KnowledgeType}
        self.sections = ordered

    def entries(self):
        for kt in KnowledgeType:
            for i, entry in enumerate(self.sections[kt]):
                yield kt, i, entry

    def to_dict(self) -> dict:
        return {
            "api": {
                "name": self.api.name,
                "library": self.api.library,
                "description": self.api.description,
            },
            "metadata": self.metadata,
            "sections": {
                kt.value: [
                    {
                        "text": e.text,
                        "provenance": sorted(e.provenance),
                        "unsourced": e.unsourced,
                    }
                    for e in self.sections[kt]
                ]
                for kt in KnowledgeType
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ApiDocument":
        api = ApiProfile(
            name=d["api"]["name"],
            library=d["api"]["library"],
            description=d["api"].get("description", ""),
        )
        sections = {
            KnowledgeType(name): [
                DocEntry(
                    text=e["text"],
                    provenance=frozenset(e["provenance"]),
                    unsourced=e.get("unsourced", False),
                )
                for e in entries
            ]
            for name, entries in d["sections"].items()
        }
        return cls(api=api, sections=sections, metadata=d.get("metadata", {}))
