"""Embedding vectors, normalization and cosine similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, ZeroVector

NORM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        array = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", array)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("embedding must be a non-empty 1-d vector")
        if self.normalized and abs(np.linalg.norm(array) - 1.0) > NORM_TOLERANCE:
            raise ValueError("vector flagged normalized but |v|_2 != 1")

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])


def normalize(raw) -> EmbeddingVector:
    """Scale to unit L2 norm.  The zero vector has no direction."""
    array = np.asarray(raw, dtype=np.float64)
    norm = float(np.linalg.norm(array))
    if norm == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    return EmbeddingVector(values=array / norm, normalized=True)


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """dot(a, b) / (|a| |b|); collapses to a plain dot product when both
    operands are already unit length."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cosine over dims {a.dim} vs {b.dim}")
    dot = float(np.dot(a.values, b.values))
    if a.normalized and b.normalized:
        return dot
    denom = float(np.linalg.norm(a.values) * np.linalg.norm(b.values))
    if denom == 0.0:
        raise ZeroVector("cosine with a zero vector is undefined")
    return dot / denom
