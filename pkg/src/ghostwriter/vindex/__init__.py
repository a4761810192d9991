"""Vector space over chunks: embedding, exact cosine kNN, persistence."""

from .embed import HashEmbedder, HttpEmbedder, embed_texts
from .index import VectorIndex, load_index
from .vectors import EmbeddingVector, cosine, normalize

__all__ = [
    "EmbeddingVector",
    "HashEmbedder",
    "HttpEmbedder",
    "VectorIndex",
    "cosine",
    "embed_texts",
    "load_index",
    "normalize",
]
