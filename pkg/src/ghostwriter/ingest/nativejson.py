"""Repository native dataset-version JSON exports -> SourceRecord.

The native export nests metadata in blocks of typed fields
(``datasetVersion.metadataBlocks.<block>.fields``).  The citation block
feeds title/description; every other field is flattened into
custom_fields under its snake_cased type name, so an equivalent Croissant
document and native export parse to the identical record.
"""

from __future__ import annotations

import json
import re

from ..errors import MalformedPage, MissingField, UnknownSchemaVersion
from .records import FileEntry, SourceRecord

_SUPPORTED_SCHEMA_PREFIX = "1."


def _snake(name: str) -> str:
    return re.sub(r"(?<=[a-z0-9])([A-Z])", r"_\1", name).lower()


def _field_values(value) -> list[str]:
    """Flatten a primitive, multiple or compound field value to strings."""
    if isinstance(value, str):
        return [value]
    if isinstance(value, (int, float)):
        return [str(value)]
    if isinstance(value, list):
        out: list[str] = []
        for item in value:
            out.extend(_field_values(item))
        return out
    if isinstance(value, dict):
        if "value" in value:
            return _field_values(value["value"])
        out = []
        for sub in value.values():
            out.extend(_field_values(sub))
        return out
    return [str(value)]


def _persistent_id(doc: dict) -> str:
    protocol = doc.get("protocol")
    authority = doc.get("authority")
    identifier = doc.get("identifier")
    if protocol and authority and identifier:
        return f"{protocol}:{authority}/{identifier}"
    for key in ("persistentId", "global_id", "persistentUrl"):
        if doc.get(key):
            return str(doc[key])
    return ""


def is_native_export(doc: dict) -> bool:
    return isinstance(doc, dict) and isinstance(doc.get("datasetVersion"), dict)


def parse_native_json(doc, collection_id: str = "") -> SourceRecord:
    """Parse one native dataset-version export.

    Accepts a parsed mapping or raw JSON text (truncated text raises
    MalformedPage).  Unsupported ``schemaVersion`` values raise
    UnknownSchemaVersion rather than being guessed at.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedPage(f"not valid JSON: {exc}") from exc
    if not is_native_export(doc):
        raise MalformedPage("not a native dataset-version export")

    version = str(doc.get("schemaVersion", "1.0"))
    if not version.startswith(_SUPPORTED_SCHEMA_PREFIX):
        raise UnknownSchemaVersion(version)

    dataset_version = doc["datasetVersion"]
    blocks = dataset_version.get("metadataBlocks", {})

    title = ""
    description_parts: list[str] = []
    custom: dict[str, list[str]] = {}
    for block in blocks.values():
        for fld in block.get("fields", []):
            type_name = fld.get("typeName", "")
            values = _field_values(fld.get("value"))
            if type_name == "title":
                title = values[0] if values else ""
            elif type_name == "dsDescription":
                description_parts.extend(values)
            elif type_name and values:
                custom.setdefault(_snake(type_name), []).extend(values)

    if not title:
        raise MissingField("title")
    persistent_id = _persistent_id(doc)
    if not persistent_id:
        raise MissingField("identifier")

    manifest = []
    for entry in dataset_version.get("files", []):
        data_file = entry.get("dataFile", {})
        manifest.append(
            FileEntry(
                name=entry.get("label") or data_file.get("filename", ""),
                media_type=data_file.get("contentType", ""),
                byte_size=int(data_file.get("filesize", 0)),
            )
        )

    return SourceRecord(
        persistent_id=persistent_id,
        title=title,
        description="\n\n".join(description_parts),
        custom_fields=custom,
        file_manifest=manifest,
        collection_id=collection_id,
    )
