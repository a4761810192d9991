"""Typed knowledge graph over records, concepts, topics and modalities."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..errors import DanglingLink
from ..ingest.records import SourceRecord
from ..ingest.vocab import ConceptLink

KIND_DATASET = "dataset"
KIND_CONCEPT = "concept"
KIND_TOPIC = "topic"
KIND_MODALITY = "modality"

EDGE_HAS_CONCEPT = "has_concept"
EDGE_HAS_TOPIC = "has_topic"
EDGE_HAS_MODALITY = "has_modality"

# Custom fields whose values become first-class nodes.
_FIELD_NODE_KINDS = {
    "topic_name": (KIND_TOPIC, EDGE_HAS_TOPIC),
    "modalities": (KIND_MODALITY, EDGE_HAS_MODALITY),
}


@dataclass(frozen=True)
class Node:
    node_id: str
    kind: str
    label: str


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    kind: str
    weight: float


@dataclass
class KnowledgeGraph:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)

    def add_node(self, node: Node) -> None:
        existing = self.nodes.get(node.node_id)
        if existing is None:
            self.nodes[node.node_id] = node
        elif existing.kind != node.kind:
            raise ValueError(f"node {node.node_id!r} declared with two kinds")

    def neighbors(self) -> dict[str, set[str]]:
        adjacency: dict[str, set[str]] = {node_id: set() for node_id in self.nodes}
        for edge in self.edges:
            adjacency[edge.a].add(edge.b)
            adjacency[edge.b].add(edge.a)
        return adjacency

    def node_ids(self) -> list[str]:
        return sorted(self.nodes)


def build_graph(records: list[SourceRecord], links: list[ConceptLink]) -> KnowledgeGraph:
    """One dataset node per record, one node per distinct concept/topic/
    modality value; edge weights are raw occurrence counts."""
    graph = KnowledgeGraph()
    known_records = {r.persistent_id for r in records}
    for link in links:
        if link.record_id not in known_records:
            raise DanglingLink(f"link references missing record {link.record_id!r}")

    edge_weights: Counter[tuple[str, str, str]] = Counter()

    for record in sorted(records, key=lambda r: r.persistent_id):
        graph.add_node(Node(record.persistent_id, KIND_DATASET, record.title))
        for field_name, (kind, edge_kind) in _FIELD_NODE_KINDS.items():
            for value in record.custom_fields.get(field_name, []):
                node_id = f"{kind}:{value.casefold()}"
                if node_id not in graph.nodes:
                    graph.add_node(Node(node_id, kind, value))
                edge_weights[(record.persistent_id, node_id, edge_kind)] += 1

    for link in sorted(links, key=lambda l: (l.record_id, l.field_name, l.raw_value)):
        node_id = f"{KIND_CONCEPT}:{link.concept_uri}"
        if node_id not in graph.nodes:
            graph.add_node(Node(node_id, KIND_CONCEPT, link.raw_value))
        edge_weights[(link.record_id, node_id, EDGE_HAS_CONCEPT)] += 1

    graph.edges = [
        Edge(a, b, kind, float(weight))
        for (a, b, kind), weight in sorted(edge_weights.items())
    ]
    return graph


def match_query_nodes(graph: KnowledgeGraph, terms: list[str]) -> list[str]:
    """Nodes whose whole label equals any term, case-insensitively."""
    wanted = {term.casefold() for term in terms}
    return sorted(
        node.node_id for node in graph.nodes.values() if node.label.casefold() in wanted
    )


def graph_to_doc(graph: KnowledgeGraph) -> dict:
    return {
        "nodes": [
            {"node_id": n.node_id, "kind": n.kind, "label": n.label}
            for n in sorted(graph.nodes.values(), key=lambda n: n.node_id)
        ],
        "edges": [
            {"a": e.a, "b": e.b, "kind": e.kind, "weight": e.weight}
            for e in sorted(graph.edges, key=lambda e: (e.a, e.b, e.kind))
        ],
    }


def graph_from_doc(doc: dict) -> KnowledgeGraph:
    graph = KnowledgeGraph()
    for n in doc.get("nodes", []):
        graph.add_node(Node(n["node_id"], n["kind"], n["label"]))
    graph.edges = [
        Edge(e["a"], e["b"], e["kind"], float(e["weight"])) for e in doc.get("edges", [])
    ]
    return graph
