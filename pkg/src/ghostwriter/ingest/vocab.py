"""Controlled-vocabulary loading and concept linking.

Vocabularies arrive as SKOS-flavored JSON-LD and are reduced at load time
to ``{uri, pref_label, alt_labels}`` triples.  Linking is deterministic:
case-insensitive equality on the preferred label first, alternate labels
second, no fuzzy matching.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import MalformedPage
from .records import SchemaRegistry, SourceRecord

EXACT_PREF_SCORE = 1.0
ALT_LABEL_SCORE = 0.9


@dataclass(frozen=True)
class Concept:
    uri: str
    pref_label: str
    alt_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.uri or not self.pref_label:
            raise ValueError("concept needs a uri and a non-empty pref_label")


@dataclass(frozen=True)
class Vocabulary:
    concepts: tuple[Concept, ...]

    def __post_init__(self):
        uris = [c.uri for c in self.concepts]
        if len(set(uris)) != len(uris):
            raise ValueError("concept uris must be unique")


@dataclass(frozen=True)
class ConceptLink:
    record_id: str
    field_name: str
    raw_value: str
    concept_uri: str
    match_kind: str  # "exact_pref" | "alt_label"
    score: float = field(default=EXACT_PREF_SCORE)

    def __post_init__(self):
        if self.match_kind == "exact_pref" and self.score != EXACT_PREF_SCORE:
            raise ValueError("exact_pref links score 1.0")
        if not 0.0 < self.score <= 1.0:
            raise ValueError("score must be in (0, 1]")


def _label_strings(value) -> list[str]:
    if isinstance(value, str):
        return [value]
    if isinstance(value, dict) and "@value" in value:
        return [str(value["@value"])]
    if isinstance(value, list):
        out: list[str] = []
        for item in value:
            out.extend(_label_strings(item))
        return out
    return []


def _first_key(node: dict, *names: str):
    for name in names:
        if name in node:
            return node[name]
    return None


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Read a SKOS JSON-LD file down to plain concepts.

    Nodes are taken from ``@graph`` (or a top-level list); both bare and
    ``skos:``-prefixed property names are accepted.
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedPage(f"vocabulary is not valid JSON: {exc}") from exc

    if isinstance(doc, dict):
        nodes = doc.get("@graph", doc.get("concepts", []))
    else:
        nodes = doc
    concepts = []
    for node in nodes:
        if not isinstance(node, dict):
            continue
        uri = node.get("@id") or node.get("uri") or ""
        pref = _label_strings(_first_key(node, "skos:prefLabel", "prefLabel", "pref_label"))
        alts = _label_strings(_first_key(node, "skos:altLabel", "altLabel", "alt_labels"))
        if uri and pref:
            concepts.append(Concept(uri=uri, pref_label=pref[0], alt_labels=tuple(alts)))
    return Vocabulary(concepts=tuple(concepts))


def link_concepts(
    record: SourceRecord,
    vocab: Vocabulary,
    registry: SchemaRegistry | None = None,
) -> list[ConceptLink]:
    """Link declared custom-field values to vocabulary concepts.

    Preferred-label equality wins (score 1.0); alternate labels score 0.9.
    Values with no match produce nothing.  Output sorted by
    (field_name, raw_value).
    """
    registry = registry or SchemaRegistry()
    by_pref = {c.pref_label.casefold(): c for c in vocab.concepts}
    by_alt: dict[str, Concept] = {}
    for concept in vocab.concepts:
        for alt in concept.alt_labels:
            by_alt.setdefault(alt.casefold(), concept)

    links = []
    for field_name, value in registry.declared_items(record):
        key = value.casefold()
        if key in by_pref:
            links.append(
                ConceptLink(record.persistent_id, field_name, value,
                            by_pref[key].uri, "exact_pref", EXACT_PREF_SCORE)
            )
        elif key in by_alt:
            links.append(
                ConceptLink(record.persistent_id, field_name, value,
                            by_alt[key].uri, "alt_label", ALT_LABEL_SCORE)
            )
    links.sort(key=lambda link: (link.field_name, link.raw_value))
    return links
