"""Answers: generated text, citations extracted from [Sk] tags, trace."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .prompts import AugmentedPrompt

PHANTOM_CITATION_FLAG = "phantom_citation"

_TAG_RE = re.compile(r"\[(S\d+)\]")


@dataclass
class Answer:
    text: str
    citations: list[str] = field(default_factory=list)
    trace: list = field(default_factory=list)
    uncited: bool = True
    flags: list[str] = field(default_factory=list)
    valid_tags: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "citations": list(self.citations),
            "uncited": self.uncited,
            "flags": list(self.flags),
            "trace": self.trace,
        }


def extract_tags(text: str) -> list[str]:
    """All [Sk] tags in order of appearance, duplicates preserved."""
    return _TAG_RE.findall(text)


def assemble_answer(
    generation: str,
    prompt: AugmentedPrompt,
    trace: list,
    flags: list[str] | None = None,
) -> Answer:
    """Citations are the source ids of cited blocks, deduplicated in
    first-mention order.  Tags pointing at blocks that were never in the
    prompt are dropped and flagged, never cited."""
    flags = list(flags) if flags else []
    blocks = prompt.block_by_tag()
    citations: list[str] = []
    valid_tags: list[str] = []
    for tag in extract_tags(generation):
        block = blocks.get(tag)
        if block is None:
            if PHANTOM_CITATION_FLAG not in flags:
                flags.append(PHANTOM_CITATION_FLAG)
            continue
        if tag not in valid_tags:
            valid_tags.append(tag)
        if block.source_id not in citations:
            citations.append(block.source_id)
    return Answer(
        text=generation,
        citations=citations,
        trace=trace,
        uncited=not citations,
        flags=flags,
        valid_tags=valid_tags,
    )


def error_answer(message: str, trace: list, flags: list[str] | None = None) -> Answer:
    """Failure terminal: empty text, the partial trace preserved."""
    all_flags = list(flags) if flags else []
    all_flags.append(f"error:{message}")
    return Answer(text="", citations=[], trace=trace, uncited=True, flags=all_flags)
