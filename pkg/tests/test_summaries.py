import pytest

from ghostwriter.errors import GenerationFailed
from ghostwriter.ingest import SourceRecord
from ghostwriter.kgraph import (
    build_graph,
    build_summary_prompt,
    detect_communities,
    summarize_community,
)
from ghostwriter.modelgw import Failure, ModelGateway, ScriptedEndpoint


@pytest.fixture
def small_graph():
    records = [
        SourceRecord(persistent_id="doi:a", title="Alpha Dataset", description="",
                     custom_fields={"topic_name": ["Inclusion"]}),
        SourceRecord(persistent_id="doi:b", title="Beta Dataset", description="",
                     custom_fields={"topic_name": ["Inclusion"]}),
    ]
    graph = build_graph(records, [])
    return graph, detect_communities(graph)


def test_scripted_summary_is_stored_and_prompt_lists_members(small_graph):
    graph, assignment = small_graph
    endpoint = ScriptedEndpoint(["SUMMARY"])
    gateway = ModelGateway(endpoint)
    community_id = assignment.community_ids()[0]

    summary = summarize_community(community_id, assignment, graph, gateway)

    assert summary == "SUMMARY"
    assert assignment.communities[community_id].summary == "SUMMARY"
    prompt = endpoint.calls[0]
    for node in graph.nodes.values():
        assert node.label in prompt
        assert node.kind in prompt


def test_singleton_community_prompt_contains_exactly_that_label():
    record = SourceRecord(persistent_id="doi:solo", title="Solo Entry", description="")
    graph = build_graph([record], [])
    assignment = detect_communities(graph)
    endpoint = ScriptedEndpoint(["ok"])
    summarize_community("doi:solo", assignment, graph, ModelGateway(endpoint))
    prompt = endpoint.calls[0]
    assert prompt.count("- ") == 1
    assert "Solo Entry" in prompt


def test_failing_mock_propagates_generation_failed(small_graph):
    graph, assignment = small_graph
    gateway = ModelGateway(ScriptedEndpoint([Failure("GenerationFailed")]))
    with pytest.raises(GenerationFailed):
        summarize_community(assignment.community_ids()[0], assignment, graph, gateway)


def test_overlong_member_list_truncated_tail_first(small_graph):
    graph, assignment = small_graph
    community_id = assignment.community_ids()[0]
    prompt, truncated = build_summary_prompt(community_id, assignment, graph, 180)
    assert truncated
    assert len(prompt) <= 180

    flags = []
    gateway = ModelGateway(ScriptedEndpoint(["s"]), context_budget_chars=180)
    summarize_community(community_id, assignment, graph, gateway, flags=flags)
    assert flags == [f"summary_truncated:{community_id}"]
