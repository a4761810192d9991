"""Iterative strategies: the self-reflective loop and the notebook loop.

Both retrieve only while a judge keeps saying the answer is not there
yet, and both stop hard at max_iterations retrieval rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..modelgw.gateway import GenerationRequest
from ..retrieval import RetrievalResult, RetrievedItem
from .answers import Answer, assemble_answer, extract_tags
from .prompts import PREAMBLE, ContextBlock, build_prompt
from .retrieve import retrieve_corrective, retrieve_vanilla

NOTEBOOK_CAPPED_FLAG = "notebook_capped"


@dataclass
class NotebookEntry:
    fact: str
    supporting_chunks: list[str] = field(default_factory=list)


@dataclass
class Notebook:
    entries: list[NotebookEntry] = field(default_factory=list)
    status: str = "insufficient"

    def rendered(self) -> str:
        if not self.entries:
            return "(no facts yet)"
        return "\n".join(f"- {entry.fact}" for entry in self.entries)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "entries": [
                {"fact": e.fact, "supporting_chunks": list(e.supporting_chunks)}
                for e in self.entries
            ],
        }


def _draft_prompt(question: str) -> str:
    return (
        "Answer the question from what you already know, without any "
        "supplied context.\n"
        f"Question: {question}\nAnswer:"
    )


def _history_detail(history) -> dict:
    return {"history": [q for q, _ in history]}


def answer_self_reflective(question, cfg, deps, history=(), trace=None) -> Answer:
    """Draft first; retrieve only when the draft is judged insufficient.

    Each round runs corrective retrieval, regenerates with context, and
    re-judges, up to cfg.max_iterations rounds.  The last generation wins
    when the judge is never satisfied.
    """
    trace = trace if trace is not None else []
    flags: list[str] = []
    gateway = deps.gateway

    draft = gateway.complete(GenerationRequest(prompt=_draft_prompt(question)), trace=trace)
    if gateway.judge_sufficiency(question, draft, trace=trace):
        return Answer(text=draft, citations=[], trace=trace, uncited=True, flags=flags)

    answer = Answer(text=draft, citations=[], trace=trace, uncited=True, flags=flags)
    for _ in range(cfg.max_iterations):
        result = retrieve_corrective(
            question, cfg, deps.index, deps.embedder, gateway, deps.store, trace
        )
        round_flags = list(result.trace_flags)
        prompt = build_prompt(
            question, result, list(history), deps.resolver,
            gateway.context_budget_chars, round_flags,
        )
        generation = gateway.complete(
            GenerationRequest(prompt=prompt.render()),
            trace=trace,
            detail_extra=_history_detail(prompt.history),
        )
        answer = assemble_answer(generation, prompt, trace, flags + round_flags)
        if gateway.judge_sufficiency(question, generation, trace=trace):
            return answer
    return answer


def _parse_fact_entries(reply: str, tag_to_chunk: dict[str, str]) -> list[NotebookEntry]:
    entries = []
    for raw_line in reply.splitlines():
        line = raw_line.strip().lstrip("-*").strip()
        if not line:
            continue
        supporting = []
        for tag in extract_tags(line):
            chunk_id = tag_to_chunk.get(tag)
            if chunk_id is not None and chunk_id not in supporting:
                supporting.append(chunk_id)
        entries.append(NotebookEntry(fact=line, supporting_chunks=supporting))
    return entries


def answer_notebook(question, cfg, deps, history=(), trace=None) -> Answer:
    """Accumulate cited facts in an external notebook until the judge calls
    them sufficient, then answer from the notebook.

    Context tags are assigned once per distinct chunk across rounds, so a
    fact's [Sk] citation stays valid in the final prompt.
    """
    trace = trace if trace is not None else []
    flags: list[str] = []
    gateway = deps.gateway

    init_reply = gateway.complete(
        GenerationRequest(
            prompt=(
                "Note down, one per line, what must be established to answer "
                "this question.\n"
                f"Question: {question}"
            )
        ),
        trace=trace,
    )
    notebook = Notebook(entries=_parse_fact_entries(init_reply, {}))

    cumulative: list[RetrievedItem] = []
    seen_chunks: set[str] = set()
    current_query = question

    for round_number in range(1, cfg.max_iterations + 1):
        result = retrieve_vanilla(current_query, cfg, deps.index, deps.embedder, trace)
        for item in result.items:
            if item.chunk_id not in seen_chunks:
                seen_chunks.add(item.chunk_id)
                cumulative.append(item)

        blocks = []
        tag_to_chunk = {}
        for i, item in enumerate(cumulative, start=1):
            source_id, text = deps.resolver(item)
            blocks.append(ContextBlock(f"S{i}", source_id, text, item.score))
            tag_to_chunk[f"S{i}"] = item.chunk_id
        block_lines = "\n".join(
            f"[{b.tag}] (source: {b.source_id})\n{b.text}" for b in blocks
        )
        facts_reply = gateway.complete(
            GenerationRequest(
                prompt=(
                    "From the context blocks, add short factual notes that help "
                    "answer the question, one per line, each citing its "
                    "supporting block tag like [S1].\n"
                    f"Question: {question}\n"
                    f"Known facts:\n{notebook.rendered()}\n"
                    f"Context:\n{block_lines}"
                )
            ),
            trace=trace,
        )
        notebook.entries.extend(_parse_fact_entries(facts_reply, tag_to_chunk))

        if gateway.judge_sufficiency(question, notebook.rendered(), trace=trace):
            notebook.status = "sufficient"
            break
        if round_number < cfg.max_iterations:
            refined = gateway.complete(
                GenerationRequest(
                    prompt=(
                        "The facts so far do not answer the question. Propose one "
                        "better search query, and nothing else.\n"
                        f"Question: {question}\nFacts:\n{notebook.rendered()}"
                    ),
                    max_tokens=32,
                ),
                trace=trace,
            )
            current_query = refined.strip() or question
    if notebook.status != "sufficient":
        flags.append(NOTEBOOK_CAPPED_FLAG)

    prompt = build_prompt(
        question,
        RetrievalResult(items=list(cumulative)),
        list(history),
        deps.resolver,
        gateway.context_budget_chars,
        flags,
        preamble=PREAMBLE + "\n\nNotebook of collected facts:\n" + notebook.rendered(),
    )
    generation = gateway.complete(
        GenerationRequest(prompt=prompt.render()),
        trace=trace,
        detail_extra={"notebook": notebook.as_dict(), **_history_detail(prompt.history)},
    )
    return assemble_answer(generation, prompt, trace, flags)
