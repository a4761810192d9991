"""One entry point over all strategies, with shared dependency wiring."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CollectionNotIndexed, GatewayError, ScriptExhausted
from ..ingest.store import RecordStore
from ..kgraph.communities import CommunityAssignment
from ..kgraph.graph import KnowledgeGraph
from ..modelgw.gateway import GenerationRequest, ModelGateway
from ..vindex.index import VectorIndex
from .answers import Answer, assemble_answer, error_answer
from .config import StrategyConfig
from .loops import answer_notebook, answer_self_reflective
from .prompts import build_prompt
from .retrieve import (
    COMMUNITY_PREFIX,
    rerank_cot,
    retrieve_corrective,
    retrieve_graph,
    retrieve_vanilla,
)


@dataclass
class StrategyDeps:
    store: RecordStore
    index: VectorIndex
    embedder: object
    gateway: ModelGateway
    graph: KnowledgeGraph | None = None
    assignment: CommunityAssignment | None = None

    def resolver(self, item) -> tuple[str, str]:
        """Map a retrieved item to (source_id, context text)."""
        if item.chunk_id.startswith(COMMUNITY_PREFIX):
            community_id = item.chunk_id[len(COMMUNITY_PREFIX):]
            summary = ""
            if self.assignment is not None:
                community = self.assignment.communities.get(community_id)
                if community is not None:
                    summary = community.summary or ""
            return f"graph:{community_id}", summary
        chunk = self.store.get_chunk(item.chunk_id)
        if chunk is None:
            return item.chunk_id.rsplit("#", 1)[0], ""
        return chunk.source_id, chunk.text


def _generate_answer(question, cfg, deps, history, result, trace) -> Answer:
    flags = list(result.trace_flags)
    if cfg.rerank and len(result.items) > 1:
        result = rerank_cot(question, result, deps.gateway, trace, deps.resolver)
        flags = list(result.trace_flags)
    prompt = build_prompt(
        question, result, list(history), deps.resolver,
        deps.gateway.context_budget_chars, flags,
    )
    generation = deps.gateway.complete(
        GenerationRequest(prompt=prompt.render()),
        trace=trace,
        detail_extra={"history": [q for q, _ in prompt.history]},
    )
    return assemble_answer(generation, prompt, trace, flags)


def _run_vanilla(question, cfg, deps, history, trace) -> Answer:
    result = retrieve_vanilla(question, cfg, deps.index, deps.embedder, trace)
    return _generate_answer(question, cfg, deps, history, result, trace)


def _run_corrective(question, cfg, deps, history, trace) -> Answer:
    result = retrieve_corrective(
        question, cfg, deps.index, deps.embedder, deps.gateway, deps.store, trace
    )
    return _generate_answer(question, cfg, deps, history, result, trace)


def _run_graph(question, cfg, deps, history, trace) -> Answer:
    if deps.graph is None or deps.assignment is None:
        raise CollectionNotIndexed("knowledge graph not built for this collection")
    result = retrieve_graph(
        question, cfg, deps.graph, deps.assignment,
        deps.index, deps.embedder, deps.gateway, trace,
    )
    return _generate_answer(question, cfg, deps, history, result, trace)


STRATEGIES = {
    "vanilla": _run_vanilla,
    "corrective": _run_corrective,
    "self_reflective": answer_self_reflective,
    "notebook": answer_notebook,
    "graph": _run_graph,
}


def run_strategy(
    question: str,
    cfg: StrategyConfig,
    deps: StrategyDeps,
    history: list[tuple[str, str]] | tuple = (),
) -> Answer:
    """Dispatch to the configured strategy.

    Gateway failures come back as an error answer carrying the partial
    trace; a ScriptExhausted mock is a broken test and propagates.
    """
    runner = STRATEGIES[cfg.strategy]
    trace: list = []
    try:
        return runner(question, cfg, deps, history, trace)
    except ScriptExhausted:
        raise
    except GatewayError as exc:
        return error_answer(f"{type(exc).__name__}: {exc}", trace)
