"""Croissant JSON-LD dataset descriptions -> SourceRecord."""

from __future__ import annotations

import json
import re

from ..errors import MalformedPage, MissingField, NotCroissant
from .records import FileEntry, SourceRecord

_DATASET_TYPES = {"dataset", "sc:dataset", "schema:dataset", "https://schema.org/dataset"}
_CONTEXT_MARKERS = ("croissant", "schema.org")

# Properties consumed by the core mapping; everything else is preserved.
_MAPPED = {"name", "description", "identifier", "distribution"}
_STRUCTURAL = {"@context", "@type", "@id", "conformsTo", "citeAs", "url"}


def _local_name(key: str) -> str:
    """Reduce a possibly namespaced JSON-LD key to its local name."""
    if "://" in key:
        return re.split(r"[/#]", key)[-1]
    if ":" in key:
        return key.split(":", 1)[1]
    return key


def _as_strings(value) -> list[str]:
    if isinstance(value, str):
        return [value]
    if isinstance(value, bool):
        return [str(value).lower()]
    if isinstance(value, (int, float)):
        return [str(value)]
    if isinstance(value, list):
        out: list[str] = []
        for item in value:
            out.extend(_as_strings(item))
        return out
    if isinstance(value, dict):
        if "@value" in value:
            return _as_strings(value["@value"])
        if "name" in value:
            return _as_strings(value["name"])
        return [json.dumps(value, sort_keys=True)]
    return [str(value)]


def _first_string(value) -> str:
    strings = _as_strings(value)
    return strings[0] if strings else ""


def _byte_size(value) -> int:
    if isinstance(value, (int, float)):
        return int(value)
    match = re.match(r"\s*(\d+)", str(value))
    return int(match.group(1)) if match else 0


def _file_entries(distribution) -> list[FileEntry]:
    if isinstance(distribution, dict):
        distribution = [distribution]
    entries = []
    for obj in distribution or []:
        if not isinstance(obj, dict):
            continue
        entries.append(
            FileEntry(
                name=_first_string(obj.get("name") or obj.get("@id") or ""),
                media_type=_first_string(obj.get("encodingFormat", "")),
                byte_size=_byte_size(obj.get("contentSize", 0)),
            )
        )
    return entries


def is_croissant(doc: dict) -> bool:
    context = doc.get("@context")
    if context is None:
        return False
    blob = json.dumps(context).lower()
    if not any(marker in blob for marker in _CONTEXT_MARKERS):
        return False
    declared = doc.get("@type")
    types = declared if isinstance(declared, list) else [declared]
    return any(isinstance(t, str) and t.lower() in _DATASET_TYPES for t in types)


def parse_croissant(doc, collection_id: str = "") -> SourceRecord:
    """Parse one Croissant document.

    Accepts a parsed mapping or raw JSON text.  Raises NotCroissant when the
    type/context is wrong, MissingField for absent name/identifier, and
    MalformedPage for undecodable text.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedPage(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not is_croissant(doc):
        raise NotCroissant("document does not declare a Croissant dataset")

    if "name" not in doc or not _first_string(doc["name"]):
        raise MissingField("name")
    identifier = _first_string(doc.get("identifier") or doc.get("@id") or "")
    if not identifier:
        raise MissingField("identifier")

    custom: dict[str, list[str]] = {}
    for key, value in doc.items():
        if key in _STRUCTURAL:
            continue
        local = _local_name(key)
        if local in _MAPPED:
            continue
        values = _as_strings(value)
        if values:
            custom.setdefault(local, []).extend(values)

    return SourceRecord(
        persistent_id=identifier,
        title=_first_string(doc["name"]),
        description=_first_string(doc.get("description", "")),
        custom_fields=custom,
        file_manifest=_file_entries(doc.get("distribution")),
        collection_id=collection_id,
    )
