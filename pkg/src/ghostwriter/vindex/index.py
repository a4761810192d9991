"""Exact cosine k-nearest-neighbor index with durable binary persistence.

Every vector is unit-normalized at insert, so similarity is a plain dot
product.  Vectors are held at float32 precision (the on-disk precision)
from the moment of insert; a save/load round trip therefore answers every
query bit-identically.

File layout, all integers little-endian:

    magic   8 bytes  b"GWVIDX01"
    version u32
    dim     u32
    count   u32
    tag_len u16, model_tag utf-8
    sha256  32 bytes, checksum of the entries section
    entries count times: u16 id_len, chunk_id utf-8, dim float32 values
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch, IndexCorrupt, IoError
from ..retrieval import PROVENANCE_VECTOR, RetrievalResult, RetrievedItem
from .vectors import EmbeddingVector, normalize

MAGIC = b"GWVIDX01"
FORMAT_VERSION = 1


class VectorIndex:
    def __init__(self, dim: int, model_tag: str = ""):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.model_tag = model_tag
        self._ids: list[str] = []
        self._id_set: set[str] = set()
        self._rows: list[np.ndarray] = []
        self._matrix: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self._ids)

    def chunk_ids(self) -> list[str]:
        return list(self._ids)

    def add(self, chunk_id: str, vector) -> None:
        """Insert one vector; it is normalized and clamped to float32
        precision here so persisted and in-memory scores agree."""
        if chunk_id in self._id_set:
            raise ValueError(f"duplicate chunk_id {chunk_id!r}")
        if isinstance(vector, EmbeddingVector):
            values = vector.values
        else:
            values = np.asarray(vector, dtype=np.float64)
        if values.shape != (self.dim,):
            raise DimensionMismatch(
                f"vector shape {values.shape} vs index dim {self.dim}"
            )
        unit = normalize(values).values.astype(np.float32).astype(np.float64)
        self._ids.append(chunk_id)
        self._id_set.add(chunk_id)
        self._rows.append(unit)
        self._matrix = None

    @classmethod
    def build(cls, dim: int, items, model_tag: str = "") -> "VectorIndex":
        index = cls(dim, model_tag)
        for chunk_id, vector in items:
            index.add(chunk_id, vector)
        return index

    def _stacked(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = (
                np.vstack(self._rows) if self._rows else np.empty((0, self.dim))
            )
        return self._matrix

    def vector_for(self, chunk_id: str) -> np.ndarray:
        return self._rows[self._ids.index(chunk_id)].copy()

    def knn(self, query: EmbeddingVector, k: int) -> RetrievalResult:
        """Top-k by cosine, descending; ties broken by ascending chunk_id."""
        if k < 0:
            raise ValueError("k must be >= 0")
        if query.dim != self.dim:
            raise DimensionMismatch(f"query dim {query.dim} vs index dim {self.dim}")
        if k == 0 or not self._ids:
            return RetrievalResult(items=[])
        q = query.values
        if not query.normalized:
            q = normalize(q).values
        scores = self._stacked() @ q
        ranked = sorted(zip(self._ids, scores), key=lambda pair: (-pair[1], pair[0]))
        return RetrievalResult(
            items=[
                RetrievedItem(chunk_id=cid, score=float(score), provenance=PROVENANCE_VECTOR)
                for cid, score in ranked[: min(k, len(ranked))]
            ]
        )

    # --- persistence --------------------------------------------------------

    def _entries_blob(self) -> bytes:
        parts = []
        for chunk_id, row in zip(self._ids, self._rows):
            encoded = chunk_id.encode("utf-8")
            parts.append(struct.pack("<H", len(encoded)))
            parts.append(encoded)
            parts.append(row.astype(np.float32).tobytes())
        return b"".join(parts)

    def persist(self, path: str | Path) -> None:
        entries = self._entries_blob()
        tag = self.model_tag.encode("utf-8")
        header = b"".join(
            [
                MAGIC,
                struct.pack("<III", FORMAT_VERSION, self.dim, len(self._ids)),
                struct.pack("<H", len(tag)),
                tag,
                hashlib.sha256(entries).digest(),
            ]
        )
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_bytes(header + entries)
            os.replace(tmp, path)
        except OSError as exc:
            raise IoError(f"cannot write index to {path}: {exc}") from exc


def load_index(path: str | Path) -> VectorIndex:
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read index from {path}: {exc}") from exc

    try:
        if len(blob) < 22 or blob[:8] != MAGIC:
            raise IndexCorrupt(f"{path}: bad magic")
        version, dim, count = struct.unpack_from("<III", blob, 8)
        if version != FORMAT_VERSION:
            raise IndexCorrupt(f"{path}: unsupported version {version}")
        (tag_len,) = struct.unpack_from("<H", blob, 20)
        offset = 22
        model_tag = blob[offset : offset + tag_len].decode("utf-8")
        offset += tag_len
        checksum = blob[offset : offset + 32]
        offset += 32
        entries = blob[offset:]
        if len(checksum) != 32 or hashlib.sha256(entries).digest() != checksum:
            raise IndexCorrupt(f"{path}: checksum mismatch")

        index = VectorIndex(dim, model_tag)
        pos = 0
        for _ in range(count):
            (id_len,) = struct.unpack_from("<H", entries, pos)
            pos += 2
            chunk_id = entries[pos : pos + id_len].decode("utf-8")
            pos += id_len
            row = np.frombuffer(entries, dtype="<f4", count=dim, offset=pos).astype(np.float64)
            if row.shape != (dim,):
                raise IndexCorrupt(f"{path}: short entry payload")
            pos += dim * 4
            index._ids.append(chunk_id)
            index._id_set.add(chunk_id)
            index._rows.append(row)
        if pos != len(entries):
            raise IndexCorrupt(f"{path}: trailing bytes after entries")
    except (struct.error, UnicodeDecodeError, IndexError, ValueError) as exc:
        raise IndexCorrupt(f"{path}: truncated or mangled index file: {exc}") from exc
    return index
