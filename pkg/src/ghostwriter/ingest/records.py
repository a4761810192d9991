"""Canonical record model and its JSON serialization.

A SourceRecord is the single shape every parser converges on; the store,
the graph builder and the chunker all consume it.  Serialization is
deliberately plain JSON so records survive a round trip bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# Custom fields named by the collection's metadata block.  Unknown keys are
# preserved on the record but reported by the registry, never rejected.
DECLARED_CUSTOM_FIELDS = (
    "modalities",
    "interaction_modes",
    "art_form",
    "topic_name",
    "topic_type",
)


@dataclass(frozen=True)
class FileEntry:
    name: str
    media_type: str
    byte_size: int


@dataclass(frozen=True)
class SourceRecord:
    """Canonical metadata for one archived dataset."""

    persistent_id: str
    title: str
    description: str
    custom_fields: dict[str, list[str]] = field(default_factory=dict)
    file_manifest: list[FileEntry] = field(default_factory=list)
    collection_id: str = ""

    def __post_init__(self):
        if not self.persistent_id:
            raise ValueError("persistent_id must be non-empty")


@dataclass(frozen=True)
class Chunk:
    """One indexable window of a record's text.

    chunk_id is ``<persistent_id>#<ordinal>``; sorting by ordinal restores
    reading order.  Offsets are Unicode code-point positions into the
    record's indexable text.
    """

    chunk_id: str
    source_id: str
    text: str
    char_start: int
    char_end: int

    def __post_init__(self):
        if not (0 <= self.char_start < self.char_end):
            raise ValueError("chunk offsets must satisfy 0 <= start < end")
        if len(self.text) != self.char_end - self.char_start:
            raise ValueError("chunk text length must equal end - start")

    @property
    def ordinal(self) -> int:
        return int(self.chunk_id.rsplit("#", 1)[1])


class SchemaRegistry:
    """Declared custom-field names for a collection's metadata block.

    The production field list is collection-specific; the registry ships
    with the core block and accepts extensions.
    """

    def __init__(self, extra_fields: tuple[str, ...] = ()):
        self.declared = tuple(dict.fromkeys(DECLARED_CUSTOM_FIELDS + tuple(extra_fields)))

    def unknown_keys(self, record: SourceRecord) -> list[str]:
        """Custom-field keys outside the declared schema, sorted."""
        return sorted(k for k in record.custom_fields if k not in self.declared)

    def declared_items(self, record: SourceRecord):
        """(field_name, value) pairs for declared fields only, in field order."""
        for name in self.declared:
            for value in record.custom_fields.get(name, []):
                yield name, value


def record_to_json(record: SourceRecord) -> dict:
    """Canonical JSON form; keys sorted at dump time by the store."""
    return {
        "persistent_id": record.persistent_id,
        "title": record.title,
        "description": record.description,
        "custom_fields": {k: list(v) for k, v in sorted(record.custom_fields.items())},
        "file_manifest": [
            {"name": f.name, "media_type": f.media_type, "byte_size": f.byte_size}
            for f in record.file_manifest
        ],
        "collection_id": record.collection_id,
    }


def record_from_json(doc: dict) -> SourceRecord:
    return SourceRecord(
        persistent_id=doc["persistent_id"],
        title=doc["title"],
        description=doc["description"],
        custom_fields={k: list(v) for k, v in doc.get("custom_fields", {}).items()},
        file_manifest=[
            FileEntry(f["name"], f["media_type"], int(f["byte_size"]))
            for f in doc.get("file_manifest", [])
        ],
        collection_id=doc.get("collection_id", ""),
    )


def indexable_text(record: SourceRecord) -> str:
    """Text the chunker and index see: title, description, custom values.

    Custom fields are rendered one ``field: value`` line per value, fields
    in sorted order.  Empty segments are dropped so a record with no
    description still yields usable text.  File contents are never read.
    """
    lines = [record.title, record.description]
    for name in sorted(record.custom_fields):
        for value in record.custom_fields[name]:
            lines.append(f"{name}: {value}")
    return "\n".join(part for part in lines if part)
