"""Augmented-prompt assembly under a character budget."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetImpossible
from ..retrieval import RetrievalResult

PREAMBLE = (
    "You are an assistant for an archived collection. Answer the question "
    "using only the numbered context blocks below, and cite every "
    "supporting block inline with its tag, for example [S1]. If the "
    "context does not cover the question, say so plainly."
)

CONTEXT_TRUNCATED_FLAG = "context_truncated"
HISTORY_TRUNCATED_FLAG = "history_truncated"


@dataclass(frozen=True)
class ContextBlock:
    tag: str
    source_id: str
    text: str
    score: float = 0.0


@dataclass
class AugmentedPrompt:
    preamble: str
    context_blocks: list[ContextBlock]
    history: list[tuple[str, str]]  # (question, answer), oldest first
    question: str

    def render(self) -> str:
        parts = [self.preamble]
        if self.context_blocks:
            parts.append("Context:")
            for block in self.context_blocks:
                parts.append(f"[{block.tag}] (source: {block.source_id})\n{block.text}")
        if self.history:
            parts.append("Conversation so far:")
            for past_question, past_answer in self.history:
                parts.append(f"Q: {past_question}\nA: {past_answer}")
        parts.append(f"Question: {self.question}\nAnswer:")
        return "\n\n".join(parts)

    def block_by_tag(self) -> dict[str, ContextBlock]:
        return {block.tag: block for block in self.context_blocks}


def _retag(blocks: list[ContextBlock]) -> list[ContextBlock]:
    return [
        ContextBlock(f"S{i + 1}", block.source_id, block.text, block.score)
        for i, block in enumerate(blocks)
    ]


def build_prompt(
    question: str,
    result: RetrievalResult,
    history: list[tuple[str, str]],
    resolver,
    budget_chars: int,
    flags: list | None = None,
    preamble: str = PREAMBLE,
) -> AugmentedPrompt:
    """Tag retrieved items S1..Sn in result order and fit the budget.

    Over budget, the lowest-scored blocks go first (ties drop the later
    block), then the oldest history turns.  The question is always last
    and never dropped; if even the bare question cannot fit, that is
    BudgetImpossible, not silent truncation.
    """
    skeleton = AugmentedPrompt(preamble=preamble, context_blocks=[], history=[],
                               question=question)
    if len(skeleton.render()) > budget_chars:
        raise BudgetImpossible(
            f"question of {len(question)} chars cannot fit budget {budget_chars}"
        )

    blocks = []
    for i, item in enumerate(result.items):
        source_id, text = resolver(item)
        blocks.append(ContextBlock(f"S{i + 1}", source_id, text, item.score))
    prompt = AugmentedPrompt(
        preamble=preamble,
        context_blocks=blocks,
        history=list(history),
        question=question,
    )

    while len(prompt.render()) > budget_chars:
        if prompt.context_blocks:
            victim = min(
                range(len(prompt.context_blocks)),
                key=lambda i: (prompt.context_blocks[i].score, -i),
            )
            del prompt.context_blocks[victim]
            prompt.context_blocks = _retag(prompt.context_blocks)
            if flags is not None and CONTEXT_TRUNCATED_FLAG not in flags:
                flags.append(CONTEXT_TRUNCATED_FLAG)
        elif prompt.history:
            del prompt.history[0]
            if flags is not None and HISTORY_TRUNCATED_FLAG not in flags:
                flags.append(HISTORY_TRUNCATED_FLAG)
        else:
            break
    return prompt
