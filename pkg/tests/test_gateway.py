import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from ghostwriter.errors import ModelTimeout, PromptTooLarge, ScriptExhausted
from ghostwriter.ingest import Chunk
from ghostwriter.modelgw import (
    Failure,
    GenerationRequest,
    HttpChatEndpoint,
    ModelGateway,
    ScriptedEndpoint,
    load_script,
    verdict_for,
)


def chunk(text="some passage", chunk_id="doi:a#0"):
    return Chunk(chunk_id, "doi:a", text, 0, len(text))


def test_scripted_replies_in_order():
    gateway = ModelGateway(ScriptedEndpoint(["x", "y"]))
    assert gateway.complete(GenerationRequest("p1")) == "x"
    assert gateway.complete(GenerationRequest("p2")) == "y"


def test_script_exhaustion_is_an_error():
    gateway = ModelGateway(ScriptedEndpoint(["only"]))
    gateway.complete(GenerationRequest("p"))
    with pytest.raises(ScriptExhausted):
        gateway.complete(GenerationRequest("p"))


def test_failure_marker_raises_named_error():
    gateway = ModelGateway(ScriptedEndpoint([Failure("ModelTimeout")]))
    with pytest.raises(ModelTimeout):
        gateway.complete(GenerationRequest("p"))


def test_prompt_over_budget_rejected_before_any_call():
    endpoint = ScriptedEndpoint(["never consumed"])
    gateway = ModelGateway(endpoint, context_budget_chars=10)
    with pytest.raises(PromptTooLarge):
        gateway.complete(GenerationRequest("x" * 11))
    assert endpoint.consumed == 0


def test_every_call_lands_in_the_trace():
    trace = []
    gateway = ModelGateway(ScriptedEndpoint(["a", "0.9"]))
    gateway.complete(GenerationRequest("prompt text"), trace=trace)
    gateway.judge_relevance("q", chunk(), trace=trace)
    assert [record["kind"] for record in trace] == ["generate", "judge"]
    generate_detail = trace[0]["detail"]
    assert set(generate_detail) >= {"prompt_sha256", "endpoint_tag", "latency_ms"}
    assert generate_detail["latency_ms"] == 0.0  # deterministic endpoint


def test_scripted_trace_is_byte_identical_across_runs():
    def run():
        trace = []
        gateway = ModelGateway(ScriptedEndpoint(["a", "0.4", "yes"]))
        gateway.complete(GenerationRequest("p"), trace=trace)
        gateway.judge_relevance("q", chunk(), trace=trace)
        gateway.judge_sufficiency("q", "draft", trace=trace)
        return json.dumps(trace, sort_keys=True)

    assert run() == run()


@pytest.mark.parametrize(
    "reply,score,verdict",
    [
        ("0.9", 0.9, "correct"),
        ("0.2", 0.2, "incorrect"),
        ("no idea", 0.5, "ambiguous"),
        ("relevance: 0.75 overall", 0.75, "correct"),
        ("42", 1.0, "correct"),     # clamped
        ("-3", 0.0, "incorrect"),   # clamped
        ("0.7", 0.7, "correct"),    # boundary inclusive
        ("0.3", 0.3, "incorrect"),  # boundary inclusive
    ],
)
def test_judge_relevance_parsing_and_thresholds(reply, score, verdict):
    gateway = ModelGateway(ScriptedEndpoint([reply]))
    judgment = gateway.judge_relevance("q", chunk())
    assert judgment.score == pytest.approx(score)
    assert judgment.verdict == verdict
    assert judgment.raw_reply == reply


def test_verdict_is_pure_function_of_score():
    for i in range(101):
        score = i / 100
        expected = "correct" if score >= 0.7 else "incorrect" if score <= 0.3 else "ambiguous"
        assert verdict_for(score) == expected


@pytest.mark.parametrize(
    "reply,sufficient",
    [("yes", True), ("Yes, it does.", True), ("no", False),
     ("No.", False), ("hard to say", False)],
)
def test_sufficiency_parse_falls_back_to_insufficient(reply, sufficient):
    gateway = ModelGateway(ScriptedEndpoint([reply]))
    assert gateway.judge_sufficiency("q", "draft") is sufficient


def test_distinct_judge_endpoint_is_used_for_judging():
    main = ScriptedEndpoint(["generation"], tag="main")
    judge = ScriptedEndpoint(["0.8"], tag="judge")
    gateway = ModelGateway(main, judge_endpoint=judge)
    gateway.complete(GenerationRequest("p"))
    gateway.judge_relevance("q", chunk())
    assert main.consumed == 1
    assert judge.consumed == 1


def test_load_script_supports_failure_markers(tmp_path):
    path = tmp_path / "script.json"
    path.write_text(json.dumps(["a", {"fail": "ModelTimeout"}]), encoding="utf-8")
    script = load_script(path)
    assert script[0] == "a"
    assert isinstance(script[1], Failure)


class _ChatHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def do_POST(self):
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        reply = f"echo: {body['messages'][0]['content'][:20]}"
        payload = json.dumps(
            {"choices": [{"message": {"role": "assistant", "content": reply}}]}
        ).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


def test_http_chat_endpoint_speaks_the_wire_protocol():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _ChatHandler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    try:
        endpoint = HttpChatEndpoint(
            f"http://127.0.0.1:{server.server_address[1]}", "test-model"
        )
        gateway = ModelGateway(endpoint)
        assert gateway.complete(GenerationRequest("hello there")) == "echo: hello there"
    finally:
        server.shutdown()
        server.server_close()
