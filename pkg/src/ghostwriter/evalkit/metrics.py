"""Retrieval metrics over labeled suites, and answer groundedness."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import EmptySuite
from ..retrieval import RetrievalResult
from ..strategies.answers import Answer
from ..strategies.retrieve import COMMUNITY_PREFIX

_SENTENCE_SPLIT_RE = re.compile(r"[.!?]+")


@dataclass(frozen=True)
class EvalCase:
    question: str
    relevant_source_ids: frozenset[str]


@dataclass(frozen=True)
class EvalSuite:
    cases: tuple[EvalCase, ...]


def sources_in_rank_order(result: RetrievalResult) -> list[str]:
    """Chunk ranking mapped to source ids, first occurrence kept."""
    sources: list[str] = []
    for item in result.items:
        if item.chunk_id.startswith(COMMUNITY_PREFIX):
            continue
        source_id = item.chunk_id.rsplit("#", 1)[0]
        if source_id not in sources:
            sources.append(source_id)
    return sources


def run_retrieval_suite(suite: EvalSuite, retrieve, k: int) -> dict:
    """hit@k and MRR over the suite.

    ``retrieve`` maps (question, k) to a RetrievalResult.  A case hits when
    any relevant source appears among the top-k chunks' sources; its
    reciprocal rank is 1/position of the first relevant source in that
    deduplicated source ranking, 0 when absent.
    """
    if not suite.cases:
        raise EmptySuite("suite holds no cases")
    per_case = []
    hits = 0
    rr_total = 0.0
    for case in suite.cases:
        sources = sources_in_rank_order(retrieve(case.question, k))
        rank = 0
        for position, source_id in enumerate(sources, start=1):
            if source_id in case.relevant_source_ids:
                rank = position
                break
        hit = rank > 0
        reciprocal = 1.0 / rank if rank else 0.0
        hits += hit
        rr_total += reciprocal
        per_case.append(
            {
                "question": case.question,
                "hit": hit,
                "rank": rank,
                "reciprocal_rank": reciprocal,
                "retrieved_sources": sources,
            }
        )
    n = len(suite.cases)
    return {
        "k": k,
        "cases": n,
        "hit_at_k": hits / n,
        "mrr": rr_total / n,
        "per_case": per_case,
    }


def groundedness(answer: Answer) -> float:
    """Fraction of answer sentences carrying at least one valid [Sk] tag.

    Sentences end at ``.``, ``!`` or ``?``.  Only tags that resolved to a
    real context block count, so an uncited answer always scores 0.
    """
    sentences = [s for s in _SENTENCE_SPLIT_RE.split(answer.text) if s.strip()]
    if not sentences:
        return 0.0
    if not answer.valid_tags:
        return 0.0
    markers = [f"[{tag}]" for tag in answer.valid_tags]
    tagged = sum(1 for s in sentences if any(m in s for m in markers))
    return tagged / len(sentences)
