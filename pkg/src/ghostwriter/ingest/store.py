"""Canonical on-disk store: one JSON document per record, keyed by id.

Layout under the store root:

    records/<percent-encoded persistent_id>.json
    chunks/<percent-encoded persistent_id>.json
    graph/<collection_id>.json
    index/<collection_id>.vec

Writes are single-writer by contract; readers see whole files because
every write goes through an atomic rename.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import quote, unquote

from ..errors import StoreUnavailable
from .records import Chunk, SourceRecord, record_from_json, record_to_json


@dataclass(frozen=True)
class IngestReport:
    persistent_id: str
    status: str  # "inserted" | "updated"
    chunk_count: int
    unknown_fields: tuple[str, ...] = ()


def _encode(persistent_id: str) -> str:
    return quote(persistent_id, safe="")


def _atomic_write(path: Path, payload: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    os.replace(tmp, path)


class RecordStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.records_dir = self.root / "records"
        self.chunks_dir = self.root / "chunks"
        self.graph_dir = self.root / "graph"
        self.index_dir = self.root / "index"

    def ensure_layout(self) -> None:
        try:
            for directory in (self.records_dir, self.chunks_dir, self.graph_dir, self.index_dir):
                directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StoreUnavailable(f"cannot create store at {self.root}: {exc}") from exc

    # --- records ----------------------------------------------------------

    def upsert(self, record: SourceRecord, chunks: list[Chunk]) -> IngestReport:
        """Insert or replace a record and its chunks, keyed by persistent_id."""
        self.ensure_layout()
        record_path = self.records_dir / f"{_encode(record.persistent_id)}.json"
        status = "updated" if record_path.exists() else "inserted"
        chunk_doc = [
            {
                "chunk_id": c.chunk_id,
                "source_id": c.source_id,
                "text": c.text,
                "char_start": c.char_start,
                "char_end": c.char_end,
            }
            for c in chunks
        ]
        try:
            _atomic_write(record_path, json.dumps(record_to_json(record), sort_keys=True, indent=1))
            _atomic_write(
                self.chunks_dir / f"{_encode(record.persistent_id)}.json",
                json.dumps(chunk_doc, sort_keys=True, indent=1),
            )
        except OSError as exc:
            raise StoreUnavailable(f"cannot write to store at {self.root}: {exc}") from exc
        return IngestReport(record.persistent_id, status, len(chunks))

    def get(self, persistent_id: str) -> SourceRecord | None:
        path = self.records_dir / f"{_encode(persistent_id)}.json"
        if not path.exists():
            return None
        return record_from_json(json.loads(path.read_text(encoding="utf-8")))

    def list_records(self, collection_id: str | None = None) -> list[SourceRecord]:
        """All records, sorted by persistent_id for stable paging."""
        if not self.records_dir.exists():
            return []
        records = []
        for path in self.records_dir.glob("*.json"):
            record = record_from_json(json.loads(path.read_text(encoding="utf-8")))
            if collection_id is None or record.collection_id == collection_id:
                records.append(record)
        records.sort(key=lambda r: r.persistent_id)
        return records

    def count(self) -> int:
        if not self.records_dir.exists():
            return 0
        return sum(1 for _ in self.records_dir.glob("*.json"))

    def collections(self) -> list[str]:
        return sorted({r.collection_id for r in self.list_records() if r.collection_id})

    # --- chunks -----------------------------------------------------------

    def chunks_for(self, persistent_id: str) -> list[Chunk]:
        path = self.chunks_dir / f"{_encode(persistent_id)}.json"
        if not path.exists():
            return []
        return [
            Chunk(d["chunk_id"], d["source_id"], d["text"], d["char_start"], d["char_end"])
            for d in json.loads(path.read_text(encoding="utf-8"))
        ]

    def chunks_for_collection(self, collection_id: str | None = None) -> list[Chunk]:
        chunks = []
        for record in self.list_records(collection_id):
            chunks.extend(self.chunks_for(record.persistent_id))
        return chunks

    def get_chunk(self, chunk_id: str) -> Chunk | None:
        source_id = chunk_id.rsplit("#", 1)[0]
        for chunk in self.chunks_for(source_id):
            if chunk.chunk_id == chunk_id:
                return chunk
        return None

    # --- derived artifacts --------------------------------------------------

    def graph_path(self, collection_id: str) -> Path:
        return self.graph_dir / f"{quote(collection_id, safe='')}.json"

    def index_path(self, collection_id: str) -> Path:
        return self.index_dir / f"{quote(collection_id, safe='')}.vec"

    def save_graph_doc(self, collection_id: str, doc: dict) -> None:
        self.ensure_layout()
        try:
            _atomic_write(self.graph_path(collection_id), json.dumps(doc, sort_keys=True, indent=1))
        except OSError as exc:
            raise StoreUnavailable(f"cannot write graph: {exc}") from exc

    def load_graph_doc(self, collection_id: str) -> dict | None:
        path = self.graph_path(collection_id)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))


def decode_record_filename(name: str) -> str:
    """Inverse of the percent encoding used for record filenames."""
    return unquote(name.removesuffix(".json"))
