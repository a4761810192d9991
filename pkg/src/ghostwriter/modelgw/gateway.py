"""Uniform gateway to text-generation endpoints.

Every completion and judge call goes through here so the active trace
records exactly one entry per model call: prompt hash, endpoint tag,
latency.  Deterministic endpoints (mocks) report latency 0.0, which keeps
scripted pipeline runs byte-identical across executions.
"""

from __future__ import annotations

import hashlib
import os
import re
import time
from dataclasses import dataclass

import requests

from ..errors import (
    EndpointError,
    EndpointUnreachable,
    ModelTimeout,
    PromptTooLarge,
)
from ..ingest.records import Chunk

API_KEY_ENV = "GHOSTWRITER_MODEL_KEY"
DEFAULT_CONTEXT_BUDGET_CHARS = 12000

# CorrectiveRAG-style three-way split; configurable, these are defaults.
INCORRECT_MAX = 0.3
CORRECT_MIN = 0.7

_NUMBER_RE = re.compile(r"-?\d+(?:\.\d+)?|-?\.\d+")
_YESNO_RE = re.compile(r"\b(yes|no)\b", re.IGNORECASE)


@dataclass(frozen=True)
class GenerationRequest:
    prompt: str
    max_tokens: int = 512
    temperature: float = 0.0
    endpoint_tag: str = ""


@dataclass(frozen=True)
class RelevanceJudgment:
    score: float
    verdict: str  # "correct" | "ambiguous" | "incorrect"
    raw_reply: str


def verdict_for(score: float, incorrect_max: float = INCORRECT_MAX,
                correct_min: float = CORRECT_MIN) -> str:
    if score >= correct_min:
        return "correct"
    if score <= incorrect_max:
        return "incorrect"
    return "ambiguous"


def _prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:16]


class HttpChatEndpoint:
    """Standard chat-completions wire protocol."""

    deterministic = False

    def __init__(self, base_url: str, model: str, timeout: float = 120.0, tag: str = ""):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.timeout = timeout
        self.tag = tag or model

    def generate(self, prompt: str, max_tokens: int = 512, temperature: float = 0.0) -> str:
        url = f"{self.base_url}/chat/completions"
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(API_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        try:
            response = requests.post(
                url,
                json={
                    "model": self.model,
                    "messages": [{"role": "user", "content": prompt}],
                    "max_tokens": max_tokens,
                    "temperature": temperature,
                },
                headers=headers,
                timeout=self.timeout,
            )
        except requests.Timeout as exc:
            raise ModelTimeout(f"{url} exceeded {self.timeout}s") from exc
        except requests.RequestException as exc:
            raise EndpointUnreachable(f"cannot reach {url}: {exc}") from exc
        if not 200 <= response.status_code < 300:
            raise EndpointError(f"{url} answered {response.status_code}")
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise EndpointError(f"{url} returned a malformed completion body") from exc


class ModelGateway:
    def __init__(
        self,
        endpoint,
        judge_endpoint=None,
        context_budget_chars: int = DEFAULT_CONTEXT_BUDGET_CHARS,
        incorrect_max: float = INCORRECT_MAX,
        correct_min: float = CORRECT_MIN,
    ):
        self.endpoint = endpoint
        self.judge_endpoint = judge_endpoint or endpoint
        self.context_budget_chars = context_budget_chars
        self.incorrect_max = incorrect_max
        self.correct_min = correct_min

    def _call(self, endpoint, prompt: str, max_tokens: int, temperature: float):
        if len(prompt) > self.context_budget_chars:
            raise PromptTooLarge(
                f"prompt of {len(prompt)} chars exceeds budget "
                f"{self.context_budget_chars}"
            )
        if getattr(endpoint, "deterministic", False):
            return endpoint.generate(prompt, max_tokens, temperature), 0.0
        started = time.monotonic()
        reply = endpoint.generate(prompt, max_tokens, temperature)
        return reply, round((time.monotonic() - started) * 1000.0, 3)

    def complete(self, request: GenerationRequest, trace: list | None = None,
                 detail_extra: dict | None = None) -> str:
        reply, latency_ms = self._call(
            self.endpoint, request.prompt, request.max_tokens, request.temperature
        )
        if trace is not None:
            detail = {
                "prompt_sha256": _prompt_hash(request.prompt),
                "endpoint_tag": request.endpoint_tag or getattr(self.endpoint, "tag", ""),
                "latency_ms": latency_ms,
                "reply_chars": len(reply),
            }
            if detail_extra:
                detail.update(detail_extra)
            trace.append({"kind": "generate", "detail": detail})
        return reply

    def judge_relevance(self, question: str, chunk: Chunk,
                        trace: list | None = None) -> RelevanceJudgment:
        """Score one chunk's relevance in [0, 1] via the judge endpoint.

        The first real number in the reply is clamped to [0, 1]; an
        unparseable reply falls back to 0.5 (ambiguous) so a flaky judge
        never kills a query.
        """
        prompt = (
            "Rate how relevant the passage is to the question.\n"
            f"Question: {question}\n"
            f"Passage:\n{chunk.text}\n"
            "Reply with a single number between 0 and 1."
        )
        reply, latency_ms = self._call(self.judge_endpoint, prompt, 16, 0.0)
        match = _NUMBER_RE.search(reply)
        score = min(1.0, max(0.0, float(match.group()))) if match else 0.5
        judgment = RelevanceJudgment(
            score=score,
            verdict=verdict_for(score, self.incorrect_max, self.correct_min),
            raw_reply=reply,
        )
        if trace is not None:
            trace.append(
                {
                    "kind": "judge",
                    "detail": {
                        "mode": "relevance",
                        "chunk_id": chunk.chunk_id,
                        "score": judgment.score,
                        "verdict": judgment.verdict,
                        "endpoint_tag": getattr(self.judge_endpoint, "tag", ""),
                        "latency_ms": latency_ms,
                    },
                }
            )
        return judgment

    def judge_sufficiency(self, question: str, draft: str,
                          trace: list | None = None) -> bool:
        """Yes/no sufficiency check; unparseable replies count as no, so
        failure steers toward more retrieval rather than uncited confidence."""
        prompt = (
            "Does the draft fully answer the question? Reply yes or no.\n"
            f"Question: {question}\n"
            f"Draft:\n{draft}"
        )
        reply, latency_ms = self._call(self.judge_endpoint, prompt, 8, 0.0)
        match = _YESNO_RE.search(reply)
        sufficient = bool(match) and match.group(1).lower() == "yes"
        if trace is not None:
            trace.append(
                {
                    "kind": "judge",
                    "detail": {
                        "mode": "sufficiency",
                        "sufficient": sufficient,
                        "endpoint_tag": getattr(self.judge_endpoint, "tag", ""),
                        "latency_ms": latency_ms,
                    },
                }
            )
        return sufficient
