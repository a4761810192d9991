"""Application configuration and endpoint construction.

Endpoint config values:

    model_endpoint / judge_endpoint
        "echo" or "echo:<chars>"  deterministic prompt echo, offline
        "script:<path>"           scripted mock loaded from a JSON file
        "http(s)://..."           chat-completions endpoint (model_name key)

    embed_endpoint
        "hash" or "hash:<dim>"    deterministic token-hash embedder
        "http(s)://..."           embeddings endpoint (embed_model_name,
                                  embed_dim keys)

The API key, when an endpoint needs one, comes from the environment
variable GHOSTWRITER_MODEL_KEY; local endpoints run without it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BadConfig
from .ingest.chunker import DEFAULT_CHUNK_CHARS, DEFAULT_OVERLAP_CHARS, ChunkConfig
from .modelgw.gateway import DEFAULT_CONTEXT_BUDGET_CHARS, HttpChatEndpoint, ModelGateway
from .modelgw.mock import EchoEndpoint, ScriptedEndpoint, load_script
from .strategies.config import DEFAULT_K, DEFAULT_MAX_ITERATIONS, DEFAULT_TAU
from .vindex.embed import DEFAULT_HASH_DIM, HashEmbedder, HttpEmbedder


@dataclass
class AppConfig:
    model_endpoint: str = "echo"
    judge_endpoint: str | None = None
    embed_endpoint: str = f"hash:{DEFAULT_HASH_DIM}"
    model_name: str = "default"
    embed_model_name: str = "default"
    embed_dim: int = 768
    context_budget_chars: int = DEFAULT_CONTEXT_BUDGET_CHARS
    chunk_chars: int = DEFAULT_CHUNK_CHARS
    overlap_chars: int = DEFAULT_OVERLAP_CHARS
    defaults: dict = field(
        default_factory=lambda: {
            "k": DEFAULT_K,
            "tau": DEFAULT_TAU,
            "max_iterations": DEFAULT_MAX_ITERATIONS,
        }
    )
    store_path: str = "store"
    vocabulary_path: str | None = None
    port: int = 8011
    session_ttl_seconds: int = 3600
    page_size: int = 20

    @classmethod
    def load(cls, path: str | Path) -> "AppConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise BadConfig(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise BadConfig(f"config file is not valid JSON: {exc}") from exc
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise BadConfig(f"unknown config keys: {sorted(unknown)}")
        config = cls(**raw)
        if "defaults" in raw:
            merged = {"k": DEFAULT_K, "tau": DEFAULT_TAU,
                      "max_iterations": DEFAULT_MAX_ITERATIONS}
            merged.update(raw["defaults"])
            config.defaults = merged
        return config

    def chunk_config(self) -> ChunkConfig:
        return ChunkConfig(chunk_chars=self.chunk_chars, overlap_chars=self.overlap_chars)


def _generation_endpoint(value: str, model_name: str, tag: str):
    if value == "echo" or value.startswith("echo:"):
        max_chars = int(value.split(":", 1)[1]) if ":" in value else 400
        return EchoEndpoint(max_chars=max_chars, tag=tag)
    if value.startswith("script:"):
        return ScriptedEndpoint(load_script(value.split(":", 1)[1]), tag=tag)
    if value.startswith(("http://", "https://")):
        return HttpChatEndpoint(value, model_name, tag=tag)
    raise BadConfig(f"unrecognized generation endpoint {value!r}")


def make_gateway(config: AppConfig, mock_script: str | None = None) -> ModelGateway:
    """Build the model gateway; ``mock_script`` overrides the configured
    endpoint with a scripted mock for reproducible runs."""
    if mock_script is not None:
        endpoint = ScriptedEndpoint(load_script(mock_script), tag="mock-script")
        judge = None
    else:
        endpoint = _generation_endpoint(config.model_endpoint, config.model_name, "model")
        judge = (
            _generation_endpoint(config.judge_endpoint, config.model_name, "judge")
            if config.judge_endpoint
            else None
        )
    return ModelGateway(
        endpoint,
        judge_endpoint=judge,
        context_budget_chars=config.context_budget_chars,
    )


def make_embedder(config: AppConfig):
    value = config.embed_endpoint
    if value == "hash" or value.startswith("hash:"):
        dim = int(value.split(":", 1)[1]) if ":" in value else DEFAULT_HASH_DIM
        return HashEmbedder(dim=dim)
    if value.startswith(("http://", "https://")):
        return HttpEmbedder(value, config.embed_model_name, config.embed_dim)
    raise BadConfig(f"unrecognized embedding endpoint {value!r}")
