"""Retrieval variants: vector, judged-and-filtered, reranked, graph."""

from __future__ import annotations

import re
from collections import Counter

from ..errors import EndpointError, ModelTimeout, ModelTagMismatch, PromptTooLarge
from ..ingest.store import RecordStore
from ..kgraph.communities import CommunityAssignment
from ..kgraph.graph import KnowledgeGraph, match_query_nodes
from ..modelgw.gateway import GenerationRequest, ModelGateway
from ..retrieval import PROVENANCE_GRAPH, RetrievalResult, RetrievedItem
from ..vindex.embed import embed_texts
from ..vindex.index import VectorIndex
from .config import StrategyConfig
from .expand import expand_query

FALLBACK_EXHAUSTED_FLAG = "fallback_exhausted"
GRAPH_FALLBACK_FLAG = "graph_fallback"
RERANK_FAILED_FLAG = "rerank_failed"

COMMUNITY_PREFIX = "community:"

_PERMUTATION_RE = re.compile(r"\d+(?:\s*,\s*\d+)+")


def retrieve_vanilla(
    question: str,
    cfg: StrategyConfig,
    index: VectorIndex,
    embedder,
    trace: list | None = None,
) -> RetrievalResult:
    """Embed the question and take the top k by cosine."""
    if embedder.model_tag != index.model_tag:
        raise ModelTagMismatch(
            f"index built with {index.model_tag!r}, query embedder is "
            f"{embedder.model_tag!r}"
        )
    query = embed_texts(embedder, [question], index_dim=index.dim)[0]
    result = index.knn(query, cfg.k)
    if trace is not None:
        trace.append(
            {
                "kind": "retrieve",
                "detail": {
                    "query": question,
                    "k": cfg.k,
                    "provenance": "vector",
                    "chunk_ids": result.chunk_ids(),
                },
            }
        )
    return result


def _judge_score(gateway: ModelGateway, question: str, store: RecordStore,
                 chunk_id: str, trace: list | None) -> float:
    chunk = store.get_chunk(chunk_id)
    if chunk is None:
        return 0.0
    try:
        return gateway.judge_relevance(question, chunk, trace=trace).score
    except (ModelTimeout, EndpointError, PromptTooLarge):
        # A flaky judge is ambiguous evidence, not a dead query.
        return 0.5


def retrieve_corrective(
    question: str,
    cfg: StrategyConfig,
    index: VectorIndex,
    embedder,
    gateway: ModelGateway,
    store: RecordStore,
    trace: list | None = None,
) -> RetrievalResult:
    """Vanilla retrieval, then judge each chunk and keep scores >= tau in
    original order.  If everything is filtered, retry once with the
    expanded term family as the query; a still-empty second round is
    flagged ``fallback_exhausted``."""

    def judged_keep(result: RetrievalResult) -> list[RetrievedItem]:
        return [
            item
            for item in result.items
            if _judge_score(gateway, question, store, item.chunk_id, trace) >= cfg.tau
        ]

    first = retrieve_vanilla(question, cfg, index, embedder, trace)
    kept = judged_keep(first)
    flags = list(first.trace_flags)
    if first.items and not kept:
        family = expand_query(question, gateway, trace, flags)
        second = retrieve_vanilla(" ".join(family), cfg, index, embedder, trace)
        kept = judged_keep(second)
        flags.extend(second.trace_flags)
        if not kept:
            flags.append(FALLBACK_EXHAUSTED_FLAG)
    return RetrievalResult(items=kept, trace_flags=flags)


def rerank_cot(
    question: str,
    result: RetrievalResult,
    gateway: ModelGateway,
    trace: list | None = None,
    resolver=None,
) -> RetrievalResult:
    """Prompt-based rerank: the generator reasons step by step and emits a
    permutation of 1..n.  Any reply that is not a valid permutation leaves
    the original order and flags ``rerank_failed``, so the output item set
    always equals the input item set."""
    if len(result.items) <= 1:
        return result
    lines = []
    for i, item in enumerate(result.items, start=1):
        preview = ""
        if resolver is not None:
            _, text = resolver(item)
            preview = f" {text[:160]}"
        lines.append(f"{i}. [{item.chunk_id}]{preview}")
    reply = gateway.complete(
        GenerationRequest(
            prompt=(
                "Think step by step about which passages best answer the "
                "question, then give the best ordering of their numbers as a "
                "comma-separated list, most relevant first.\n"
                f"Question: {question}\n" + "\n".join(lines)
            ),
            max_tokens=128,
        ),
        trace=trace,
    )
    match = _PERMUTATION_RE.search(reply)
    order = [int(s) for s in match.group().split(",")] if match else []
    if sorted(order) != list(range(1, len(result.items) + 1)):
        return RetrievalResult(
            items=list(result.items),
            trace_flags=result.trace_flags + [RERANK_FAILED_FLAG],
        )
    return RetrievalResult(
        items=[result.items[i - 1] for i in order],
        trace_flags=list(result.trace_flags),
    )


def retrieve_graph(
    question: str,
    cfg: StrategyConfig,
    graph: KnowledgeGraph,
    assignment: CommunityAssignment,
    index: VectorIndex,
    embedder,
    gateway: ModelGateway,
    trace: list | None = None,
) -> RetrievalResult:
    """Match expanded terms against node labels and emit the matched
    communities' summaries, most-matched community first.  Scores are
    normalized by the best match count so graph items are never compared
    numerically against vector items."""
    flags: list[str] = []
    family = expand_query(question, gateway, trace, flags)
    matched = match_query_nodes(graph, family)
    if trace is not None:
        trace.append(
            {"kind": "graph_match", "detail": {"terms": family, "matched_nodes": matched}}
        )
    if not matched:
        fallback = retrieve_vanilla(question, cfg, index, embedder, trace)
        fallback.trace_flags = flags + fallback.trace_flags + [GRAPH_FALLBACK_FLAG]
        return fallback

    counts: Counter[str] = Counter()
    for node_id in matched:
        community_id = assignment.community_of(node_id)
        if community_id is not None:
            counts[community_id] += 1
    ordered = sorted(counts.items(), key=lambda pair: (-pair[1], pair[0]))
    top = ordered[0][1]
    items = [
        RetrievedItem(
            chunk_id=f"{COMMUNITY_PREFIX}{community_id}",
            score=count / top,
            provenance=PROVENANCE_GRAPH,
        )
        for community_id, count in ordered
    ]
    return RetrievalResult(items=items, trace_flags=flags)
