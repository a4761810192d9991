"""Ranked retrieval results shared by the index and the strategy layer."""

from __future__ import annotations

from dataclasses import dataclass, field

PROVENANCE_VECTOR = "vector"
PROVENANCE_GRAPH = "graph"
PROVENANCE_LEXICAL = "lexical"


@dataclass(frozen=True)
class RetrievedItem:
    chunk_id: str
    score: float
    provenance: str = PROVENANCE_VECTOR


@dataclass
class RetrievalResult:
    """Ordered scored items plus flags raised along the way.

    Scores are non-increasing within each provenance class; chunk ids are
    unique across the list.
    """

    items: list[RetrievedItem] = field(default_factory=list)
    trace_flags: list[str] = field(default_factory=list)

    def chunk_ids(self) -> list[str]:
        return [item.chunk_id for item in self.items]

    def __len__(self) -> int:
        return len(self.items)
