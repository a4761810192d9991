"""Desk-scale evaluation: hit@k, MRR, groundedness, marker corpora, reports."""

from .metrics import EvalCase, EvalSuite, groundedness, run_retrieval_suite, sources_in_rank_order
from .report import write_report
from .suites import fabricate_marker_corpus, load_suite, marker_token, save_suite

__all__ = [
    "EvalCase",
    "EvalSuite",
    "fabricate_marker_corpus",
    "groundedness",
    "load_suite",
    "marker_token",
    "run_retrieval_suite",
    "save_suite",
    "sources_in_rank_order",
    "write_report",
]
