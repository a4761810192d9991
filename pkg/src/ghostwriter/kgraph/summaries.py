"""Community summaries, generated lazily at index-build time and cached."""

from __future__ import annotations

from ..modelgw.gateway import GenerationRequest, ModelGateway
from .communities import CommunityAssignment
from .graph import KnowledgeGraph

_PROMPT_HEAD = (
    "Summarize, in a few sentences, what this group of related catalog "
    "entries has in common. Mention the datasets and shared themes.\n"
    "Members:\n"
)


def build_summary_prompt(
    community_id: str,
    assignment: CommunityAssignment,
    graph: KnowledgeGraph,
    budget_chars: int,
) -> tuple[str, bool]:
    """Prompt listing every member's label and kind, capped at the budget.

    Member lines are dropped tail-first until the prompt fits; the second
    return value reports whether anything was cut.
    """
    members = assignment.communities[community_id].members
    lines = []
    for node_id in members:
        node = graph.nodes.get(node_id)
        if node is not None:
            lines.append(f"- {node.label} ({node.kind})")
    truncated = False
    while lines and len(_PROMPT_HEAD) + sum(len(l) + 1 for l in lines) > budget_chars:
        lines.pop()
        truncated = True
    return _PROMPT_HEAD + "\n".join(lines), truncated


def summarize_community(
    community_id: str,
    assignment: CommunityAssignment,
    graph: KnowledgeGraph,
    gateway: ModelGateway,
    trace: list | None = None,
    flags: list | None = None,
) -> str:
    prompt, truncated = build_summary_prompt(
        community_id, assignment, graph, gateway.context_budget_chars
    )
    if truncated and flags is not None:
        flags.append(f"summary_truncated:{community_id}")
    summary = gateway.complete(GenerationRequest(prompt=prompt), trace=trace)
    assignment.communities[community_id].summary = summary
    return summary


def summarize_all(
    assignment: CommunityAssignment,
    graph: KnowledgeGraph,
    gateway: ModelGateway,
    flags: list | None = None,
) -> None:
    """Fill in every community summary, smallest community id first."""
    for community_id in assignment.community_ids():
        summarize_community(community_id, assignment, graph, gateway, flags=flags)
