"""End-to-end ingest and index-build flows shared by the CLI and service."""

from __future__ import annotations

from dataclasses import dataclass

from .config import AppConfig, make_embedder
from .errors import CollectionNotIndexed
from .ingest import (
    RecordStore,
    SchemaRegistry,
    chunk_record,
    fetch_collection,
    link_concepts,
    load_vocabulary,
    parse_document,
)
from .kgraph import (
    assignment_from_doc,
    assignment_to_doc,
    build_graph,
    detect_communities,
    graph_from_doc,
    graph_to_doc,
    summarize_all,
)
from .modelgw.gateway import ModelGateway
from .vindex import VectorIndex, load_index


@dataclass(frozen=True)
class IngestSummary:
    collection_id: str
    records: int
    inserted: int
    updated: int
    chunks: int
    unknown_fields: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "collection_id": self.collection_id,
            "records": self.records,
            "inserted": self.inserted,
            "updated": self.updated,
            "chunks": self.chunks,
            "unknown_fields": sorted(self.unknown_fields),
        }


@dataclass(frozen=True)
class IndexSummary:
    collection_id: str
    vectors: int
    graph_nodes: int
    graph_edges: int
    communities: int
    flags: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "collection_id": self.collection_id,
            "vectors": self.vectors,
            "graph_nodes": self.graph_nodes,
            "graph_edges": self.graph_edges,
            "communities": self.communities,
            "flags": list(self.flags),
        }


def ingest_collection(config: AppConfig, source: str, collection_id: str) -> IngestSummary:
    """Fetch, parse, chunk and upsert every document in the collection."""
    store = RecordStore(config.store_path)
    registry = SchemaRegistry()
    docs = fetch_collection(source, collection_id)
    chunk_cfg = config.chunk_config()

    inserted = updated = chunks = 0
    unknown: set[str] = set()
    for doc in docs:
        record = parse_document(doc, collection_id)
        record_chunks = chunk_record(record, chunk_cfg)
        report = store.upsert(record, record_chunks)
        inserted += report.status == "inserted"
        updated += report.status == "updated"
        chunks += report.chunk_count
        unknown.update(registry.unknown_keys(record))
    return IngestSummary(
        collection_id=collection_id,
        records=len(docs),
        inserted=inserted,
        updated=updated,
        chunks=chunks,
        unknown_fields=tuple(sorted(unknown)),
    )


def build_collection_index(
    config: AppConfig,
    collection_id: str,
    gateway: ModelGateway,
) -> IndexSummary:
    """Embed every chunk, build the graph, detect and summarize communities,
    and persist both artifacts."""
    store = RecordStore(config.store_path)
    records = store.list_records(collection_id)
    embedder = make_embedder(config)

    chunks = store.chunks_for_collection(collection_id)
    index = VectorIndex(dim=embedder.dim, model_tag=embedder.model_tag)
    if chunks:
        vectors = embedder.embed([chunk.text for chunk in chunks])
        for chunk, vector in zip(chunks, vectors):
            index.add(chunk.chunk_id, vector)
    index.persist(store.index_path(collection_id))

    links = []
    if config.vocabulary_path:
        vocab = load_vocabulary(config.vocabulary_path)
        for record in records:
            links.extend(link_concepts(record, vocab))
    graph = build_graph(records, links)
    assignment = detect_communities(graph)
    flags: list[str] = []
    summarize_all(assignment, graph, gateway, flags=flags)

    doc = graph_to_doc(graph)
    doc.update(assignment_to_doc(assignment))
    store.save_graph_doc(collection_id, doc)

    return IndexSummary(
        collection_id=collection_id,
        vectors=len(index),
        graph_nodes=len(graph.nodes),
        graph_edges=len(graph.edges),
        communities=len(assignment.communities),
        flags=tuple(flags),
    )


def load_collection_artifacts(store: RecordStore, collection_id: str):
    """(index, graph, assignment) persisted for the collection.

    Raises CollectionNotIndexed, naming the missing index file, when the
    index was never built.
    """
    index_path = store.index_path(collection_id)
    if not index_path.exists():
        raise CollectionNotIndexed(
            f"no index for collection {collection_id!r}; expected {index_path}"
        )
    index = load_index(index_path)
    doc = store.load_graph_doc(collection_id)
    if doc is None:
        return index, None, None
    return index, graph_from_doc(doc), assignment_from_doc(doc)
