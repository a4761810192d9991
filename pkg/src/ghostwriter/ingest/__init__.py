"""Metadata ingestion: harvesting, parsing, vocabulary linking, chunking, store."""

from .chunker import ChunkConfig, chunk_record, chunk_text
from .croissant import is_croissant, parse_croissant
from .harvest import fetch_collection
from .nativejson import is_native_export, parse_native_json
from .records import (
    Chunk,
    FileEntry,
    SchemaRegistry,
    SourceRecord,
    indexable_text,
    record_from_json,
    record_to_json,
)
from .store import IngestReport, RecordStore
from .vocab import Concept, ConceptLink, Vocabulary, link_concepts, load_vocabulary

__all__ = [
    "Chunk",
    "ChunkConfig",
    "Concept",
    "ConceptLink",
    "FileEntry",
    "IngestReport",
    "RecordStore",
    "SchemaRegistry",
    "SourceRecord",
    "Vocabulary",
    "chunk_record",
    "chunk_text",
    "fetch_collection",
    "indexable_text",
    "is_croissant",
    "is_native_export",
    "link_concepts",
    "load_vocabulary",
    "parse_croissant",
    "parse_native_json",
    "record_from_json",
    "record_to_json",
]


def parse_document(doc, collection_id: str = ""):
    """Dispatch a raw document to the matching parser."""
    from ..errors import MalformedPage

    if isinstance(doc, dict) and is_croissant(doc):
        return parse_croissant(doc, collection_id)
    if isinstance(doc, dict) and is_native_export(doc):
        return parse_native_json(doc, collection_id)
    raise MalformedPage("document is neither Croissant JSON-LD nor a native export")
