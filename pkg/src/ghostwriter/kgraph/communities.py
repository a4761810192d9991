"""Community detection by synchronous label propagation.

All nodes update in the same round from the previous round's labels, so
the outcome is independent of iteration order.  A node's own label joins
the vote alongside its neighbors' labels: pure neighbor voting never
settles on two-node components (the pair swaps labels forever), while the
self-inclusive vote provably converges on clique components.  Ties go to
the lexicographically smallest label.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .graph import KnowledgeGraph

MAX_ROUNDS = 20


@dataclass
class Community:
    members: list[str]
    summary: str | None = None


@dataclass
class CommunityAssignment:
    membership: dict[str, str] = field(default_factory=dict)
    communities: dict[str, Community] = field(default_factory=dict)

    def community_of(self, node_id: str) -> str | None:
        return self.membership.get(node_id)

    def community_ids(self) -> list[str]:
        return sorted(self.communities)


def detect_communities(graph: KnowledgeGraph) -> CommunityAssignment:
    adjacency = graph.neighbors()
    labels = {node_id: node_id for node_id in adjacency}

    for _ in range(MAX_ROUNDS):
        updated = {}
        for node_id, neighbors in adjacency.items():
            votes = Counter(labels[n] for n in neighbors)
            votes[labels[node_id]] += 1
            best = max(votes.values())
            updated[node_id] = min(lbl for lbl, count in votes.items() if count == best)
        if updated == labels:
            break
        labels = updated

    members_by_label: dict[str, list[str]] = {}
    for node_id, label in labels.items():
        members_by_label.setdefault(label, []).append(node_id)

    assignment = CommunityAssignment()
    for members in members_by_label.values():
        members.sort()
        community_id = members[0]
        assignment.communities[community_id] = Community(members=members)
        for node_id in members:
            assignment.membership[node_id] = community_id
    return assignment


def assignment_to_doc(assignment: CommunityAssignment) -> dict:
    return {
        "membership": dict(sorted(assignment.membership.items())),
        "summaries": {
            cid: community.summary
            for cid, community in sorted(assignment.communities.items())
            if community.summary is not None
        },
    }


def assignment_from_doc(doc: dict) -> CommunityAssignment:
    assignment = CommunityAssignment(membership=dict(doc.get("membership", {})))
    members_by_community: dict[str, list[str]] = {}
    for node_id, community_id in assignment.membership.items():
        members_by_community.setdefault(community_id, []).append(node_id)
    summaries = doc.get("summaries", {})
    for community_id, members in members_by_community.items():
        assignment.communities[community_id] = Community(
            members=sorted(members), summary=summaries.get(community_id)
        )
    return assignment
