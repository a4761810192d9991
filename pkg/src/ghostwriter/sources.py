"""Resolve answer citations to source-record stubs.

Community citations fan out to the community's member datasets so graph
answers still point at concrete records.  When an answer carries no
citations at all, the records behind its last retrieval stand in, flagged
as retrieval-derived rather than cited.
"""

from __future__ import annotations

from .ingest.store import RecordStore
from .kgraph.communities import CommunityAssignment
from .strategies.answers import Answer
from .strategies.retrieve import COMMUNITY_PREFIX

GRAPH_SOURCE_PREFIX = "graph:"


def _stubs_for(store: RecordStore, assignment: CommunityAssignment | None,
               source_id: str) -> list[dict]:
    if source_id.startswith(GRAPH_SOURCE_PREFIX):
        community_id = source_id[len(GRAPH_SOURCE_PREFIX):]
        stubs = []
        if assignment is not None:
            community = assignment.communities.get(community_id)
            if community is not None:
                for node_id in community.members:
                    record = store.get(node_id)
                    if record is not None:
                        stubs.append({"id": record.persistent_id, "title": record.title})
        return stubs
    record = store.get(source_id)
    if record is None:
        return []
    return [{"id": record.persistent_id, "title": record.title}]


def resolve_sources(
    store: RecordStore,
    assignment: CommunityAssignment | None,
    answer: Answer,
    limit: int,
) -> tuple[list[dict], bool]:
    """(source stubs, came_from_retrieval) for an answer."""
    stubs: list[dict] = []
    seen: set[str] = set()

    def push(candidates: list[dict]) -> None:
        for stub in candidates:
            if stub["id"] not in seen:
                seen.add(stub["id"])
                stubs.append(stub)

    for source_id in answer.citations:
        push(_stubs_for(store, assignment, source_id))
    if stubs:
        return stubs, False

    for record_entry in reversed(answer.trace):
        if record_entry.get("kind") != "retrieve":
            continue
        for chunk_id in record_entry["detail"].get("chunk_ids", []):
            if chunk_id.startswith(COMMUNITY_PREFIX):
                push(_stubs_for(store, assignment,
                                GRAPH_SOURCE_PREFIX + chunk_id[len(COMMUNITY_PREFIX):]))
            else:
                push(_stubs_for(store, assignment, chunk_id.rsplit("#", 1)[0]))
        break
    return stubs[:limit], bool(stubs)
