"""Embedding endpoints: the standard wire protocol plus a hash embedder.

The wire protocol is the widely used embeddings shape:
``POST {model, input: [str]} -> {data: [{embedding: [real]}]}``.

The hash embedder needs no endpoint at all: every token maps to a
reproducible pseudo-random unit vector seeded by the token's bytes, and a
text embeds as the normalized sum of its token vectors.  Identical texts
collide to identical vectors, and a text sharing a rare token with the
query scores far above unrelated texts.
"""

from __future__ import annotations

import hashlib
import os
import re

import numpy as np
import requests

from ..errors import DimensionMismatch, EndpointError, EndpointUnreachable, ModelTimeout
from .vectors import EmbeddingVector, normalize

API_KEY_ENV = "GHOSTWRITER_MODEL_KEY"
DEFAULT_BATCH_MAX = 64
DEFAULT_HASH_DIM = 64

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class HashEmbedder:
    """Deterministic test embedder; no network, no model."""

    def __init__(self, dim: int = DEFAULT_HASH_DIM):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.model_tag = f"hash-{dim}"
        self._token_cache: dict[str, np.ndarray] = {}

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is None:
            seed = int.from_bytes(hashlib.sha256(token.encode("utf-8")).digest()[:8], "little")
            cached = np.random.default_rng(seed).standard_normal(self.dim)
            self._token_cache[token] = cached
        return cached

    def embed(self, texts: list[str]) -> list[EmbeddingVector]:
        vectors = []
        for text in texts:
            tokens = _TOKEN_RE.findall(text.lower())
            if tokens:
                total = np.zeros(self.dim)
                for token in tokens:
                    total += self._token_vector(token)
            else:
                total = self._token_vector(f"\x00raw:{text}")
            vectors.append(normalize(total))
        return vectors


class HttpEmbedder:
    def __init__(
        self,
        base_url: str,
        model: str,
        dim: int,
        batch_max: int = DEFAULT_BATCH_MAX,
        timeout: float = 60.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.dim = dim
        self.batch_max = batch_max
        self.timeout = timeout
        self.model_tag = f"{model}-{dim}"

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(API_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        return headers

    def _post_batch(self, batch: list[str]) -> list[EmbeddingVector]:
        url = f"{self.base_url}/embeddings"
        try:
            response = requests.post(
                url,
                json={"model": self.model, "input": batch},
                headers=self._headers(),
                timeout=self.timeout,
            )
        except requests.Timeout as exc:
            raise ModelTimeout(f"{url} exceeded {self.timeout}s") from exc
        except requests.RequestException as exc:
            raise EndpointUnreachable(f"cannot reach {url}: {exc}") from exc
        if not 200 <= response.status_code < 300:
            raise EndpointError(f"{url} answered {response.status_code}")
        try:
            rows = response.json()["data"]
            raw = [row["embedding"] for row in rows]
        except (ValueError, KeyError, TypeError) as exc:
            raise EndpointError(f"{url} returned a malformed embeddings body") from exc
        if len(raw) != len(batch):
            raise EndpointError(f"{url} returned {len(raw)} vectors for {len(batch)} inputs")
        vectors = []
        for values in raw:
            if len(values) != self.dim:
                raise DimensionMismatch(
                    f"endpoint returned dim {len(values)}, expected {self.dim}"
                )
            vectors.append(normalize(np.asarray(values, dtype=np.float64)))
        return vectors

    def embed(self, texts: list[str]) -> list[EmbeddingVector]:
        vectors: list[EmbeddingVector] = []
        for start in range(0, len(texts), self.batch_max):
            vectors.extend(self._post_batch(texts[start : start + self.batch_max]))
        return vectors


def embed_texts(embedder, texts: list[str], index_dim: int | None = None) -> list[EmbeddingVector]:
    """Embed texts in input order, normalized; optionally check the target
    index dimension up front."""
    if index_dim is not None and embedder.dim != index_dim:
        raise DimensionMismatch(f"embedder dim {embedder.dim} vs index dim {index_dim}")
    if not texts:
        return []
    return embedder.embed(list(texts))
