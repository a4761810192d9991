"""Fixed-stride chunking of record text."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BadConfig
from .records import Chunk, SourceRecord, indexable_text

DEFAULT_CHUNK_CHARS = 800
DEFAULT_OVERLAP_CHARS = 200


@dataclass(frozen=True)
class ChunkConfig:
    chunk_chars: int = DEFAULT_CHUNK_CHARS
    overlap_chars: int = DEFAULT_OVERLAP_CHARS


def chunk_text(source_id: str, text: str, cfg: ChunkConfig = ChunkConfig()) -> list[Chunk]:
    """Cut text into windows of chunk_chars at stride chunk_chars - overlap_chars.

    Windows start at every stride multiple below the text length, so the
    last chunk may be shorter.  Offsets are code-point positions; slicing
    Python text can never split a Unicode scalar value.
    """
    if not 0 <= cfg.overlap_chars < cfg.chunk_chars:
        raise BadConfig(
            f"need 0 <= overlap_chars < chunk_chars, got "
            f"overlap={cfg.overlap_chars} chunk={cfg.chunk_chars}"
        )
    stride = cfg.chunk_chars - cfg.overlap_chars
    chunks = []
    start = 0
    while start < len(text):
        end = min(start + cfg.chunk_chars, len(text))
        chunks.append(
            Chunk(
                chunk_id=f"{source_id}#{len(chunks)}",
                source_id=source_id,
                text=text[start:end],
                char_start=start,
                char_end=end,
            )
        )
        start += stride
    return chunks


def chunk_record(record: SourceRecord, cfg: ChunkConfig = ChunkConfig()) -> list[Chunk]:
    return chunk_text(record.persistent_id, indexable_text(record), cfg)
