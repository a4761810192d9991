"""Knowledge graph over collection metadata, with community summaries."""

from .communities import (
    Community,
    CommunityAssignment,
    assignment_from_doc,
    assignment_to_doc,
    detect_communities,
)
from .graph import (
    Edge,
    KnowledgeGraph,
    Node,
    build_graph,
    graph_from_doc,
    graph_to_doc,
    match_query_nodes,
)
from .summaries import build_summary_prompt, summarize_all, summarize_community

__all__ = [
    "Community",
    "CommunityAssignment",
    "Edge",
    "KnowledgeGraph",
    "Node",
    "assignment_from_doc",
    "assignment_to_doc",
    "build_graph",
    "build_summary_prompt",
    "detect_communities",
    "graph_from_doc",
    "graph_to_doc",
    "match_query_nodes",
    "summarize_all",
    "summarize_community",
]
