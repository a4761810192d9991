"""Query expansion: build a family of terms around the question."""

from __future__ import annotations

import re
import string

from ..errors import GatewayError, ScriptExhausted
from ..modelgw.gateway import GenerationRequest, ModelGateway

# Fixed 50-word stop list; language-tool-free determinism.
STOP_WORDS = frozenset(
    """a an the and or but if then is are was were be been being do does did
    have has had of in on at to for with by from as that this these those it
    its which what who whom how when where why not no can could will""".split()
)

EXPANSION_FAILED_FLAG = "expansion_failed"

_WS_RE = re.compile(r"\s+")


def content_words(question: str) -> list[str]:
    """Whitespace tokens, lowercased, punctuation-trimmed, stop words out,
    first occurrence kept."""
    words = []
    for token in _WS_RE.split(question.lower()):
        word = token.strip(string.punctuation)
        if word and word not in STOP_WORDS and word not in words:
            words.append(word)
    return words


def expand_query(
    question: str,
    gateway: ModelGateway,
    trace: list | None = None,
    flags: list | None = None,
) -> list[str]:
    """Family of search terms: the question's content words, then the
    generator's suggestions in reply order, deduplicated.

    On generator failure the family is the original terms alone and
    ``expansion_failed`` is flagged; expansion never sinks a query.
    """
    if not question.strip():
        raise ValueError("question must be non-empty")
    family = content_words(question)
    failed = False
    try:
        reply = gateway.complete(
            GenerationRequest(
                prompt=(
                    "List search terms related to this question, separated by "
                    "semicolons. Terms only, no explanations.\n"
                    f"Question: {question}"
                ),
                max_tokens=64,
            ),
            trace=trace,
        )
        for raw_term in re.split(r"[;\n]", reply):
            term = raw_term.strip().lower()
            if term and term not in family:
                family.append(term)
    except ScriptExhausted:
        raise
    except GatewayError:
        failed = True
        if flags is not None:
            flags.append(EXPANSION_FAILED_FLAG)
    if trace is not None:
        trace.append(
            {"kind": "expand", "detail": {"terms": list(family), "failed": failed}}
        )
    return family
