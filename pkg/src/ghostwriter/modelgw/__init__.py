"""Gateway to generation endpoints, with scripted mocks for tests."""

from .gateway import (
    DEFAULT_CONTEXT_BUDGET_CHARS,
    GenerationRequest,
    HttpChatEndpoint,
    ModelGateway,
    RelevanceJudgment,
    verdict_for,
)
from .mock import EchoEndpoint, Failure, ScriptedEndpoint, load_script

__all__ = [
    "DEFAULT_CONTEXT_BUDGET_CHARS",
    "EchoEndpoint",
    "Failure",
    "GenerationRequest",
    "HttpChatEndpoint",
    "ModelGateway",
    "RelevanceJudgment",
    "ScriptedEndpoint",
    "load_script",
    "verdict_for",
]
