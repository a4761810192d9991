"""Deterministic endpoints for tests and offline runs."""

from __future__ import annotations

import json
from pathlib import Path

from .. import errors
from ..errors import ScriptExhausted


class Failure:
    """Script marker: raise the named gateway error instead of replying."""

    def __init__(self, error_name: str):
        exc_type = getattr(errors, error_name, None)
        if exc_type is None or not issubclass(exc_type, Exception):
            raise ValueError(f"unknown failure marker {error_name!r}")
        self.error_name = error_name
        self.exc_type = exc_type


class ScriptedEndpoint:
    """Replays a fixed script of replies; single consumer per test.

    Entries are reply strings or Failure markers.  Running past the end is
    a test error, never a silent repeat.
    """

    deterministic = True

    def __init__(self, script: list, tag: str = "scripted"):
        if not script:
            raise ValueError("script must be non-empty")
        self.tag = tag
        self._script = list(script)
        self._cursor = 0
        self.calls: list[str] = []

    @property
    def consumed(self) -> int:
        return self._cursor

    @property
    def remaining(self) -> int:
        return len(self._script) - self._cursor

    def generate(self, prompt: str, max_tokens: int = 0, temperature: float = 0.0) -> str:
        self.calls.append(prompt)
        if self._cursor >= len(self._script):
            raise ScriptExhausted(
                f"script of {len(self._script)} replies exhausted at call {self._cursor + 1}"
            )
        entry = self._script[self._cursor]
        self._cursor += 1
        if isinstance(entry, Failure):
            raise entry.exc_type(f"scripted failure: {entry.error_name}")
        return str(entry)


class EchoEndpoint:
    """Replies with a clipped echo of the prompt.

    Good enough for offline community summaries: the reply carries the
    member labels the prompt listed, deterministically.
    """

    deterministic = True

    def __init__(self, max_chars: int = 400, tag: str = "echo"):
        self.max_chars = max_chars
        self.tag = tag

    def generate(self, prompt: str, max_tokens: int = 0, temperature: float = 0.0) -> str:
        return prompt[-self.max_chars :] if len(prompt) > self.max_chars else prompt


def load_script(path: str | Path) -> list:
    """Script file: JSON array of strings or {"fail": "<ErrorName>"} objects."""
    entries = json.loads(Path(path).read_text(encoding="utf-8"))
    script = []
    for entry in entries:
        if isinstance(entry, dict) and "fail" in entry:
            script.append(Failure(entry["fail"]))
        else:
            script.append(str(entry))
    return script
