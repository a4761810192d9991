"""Suite files and the marker-corpus fabricator.

A marker corpus gives acceptance runs ground truth without human labels:
each record carries one unique nonsense token, repeated so the token-hash
embedder puts the marked record far ahead of every other.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import EmptySuite
from .metrics import EvalCase, EvalSuite


def load_suite(path: str | Path) -> EvalSuite:
    """Suite file: JSON array of {question, relevant: [source ids]}."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    cases = tuple(
        EvalCase(
            question=entry["question"],
            relevant_source_ids=frozenset(entry["relevant"]),
        )
        for entry in doc
    )
    if not cases:
        raise EmptySuite(str(path))
    return EvalSuite(cases=cases)


def save_suite(suite: EvalSuite, path: str | Path) -> None:
    doc = [
        {"question": case.question, "relevant": sorted(case.relevant_source_ids)}
        for case in suite.cases
    ]
    Path(path).write_text(json.dumps(doc, indent=1), encoding="utf-8")


def marker_token(i: int) -> str:
    return f"xqmarker{i:03d}qz"


def fabricate_marker_corpus(
    out_dir: str | Path,
    cases: int = 10,
    collection_id: str = "markers",
) -> EvalSuite:
    """Write ``cases`` Croissant fixtures into ``<out_dir>/corpus/`` plus a
    ``suite.json`` next to them.

    Each fixture's description repeats its marker token three times, which
    dominates the record's token-sum embedding.  The corpus lives in its
    own subdirectory so the suite file never gets ingested as a record.
    """
    out_dir = Path(out_dir)
    corpus_dir = out_dir / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    suite_cases = []
    for i in range(cases):
        marker = marker_token(i)
        persistent_id = f"doi:10.5072/MARK{i:03d}"
        doc = {
            "@context": {"@vocab": "https://schema.org/"},
            "@type": "Dataset",
            "name": f"Synthetic marker record {i}",
            "identifier": persistent_id,
            "description": (
                f"{marker} {marker} {marker} synthetic entry number {i} "
                "for retrieval evaluation"
            ),
        }
        (corpus_dir / f"marker_{i:03d}.json").write_text(
            json.dumps(doc, indent=1), encoding="utf-8"
        )
        suite_cases.append(
            EvalCase(question=marker, relevant_source_ids=frozenset({persistent_id}))
        )
    suite = EvalSuite(cases=tuple(suite_cases))
    save_suite(suite, out_dir / "suite.json")
    return suite
