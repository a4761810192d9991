"""Pluggable RAG control loops behind one strategy interface."""

from .answers import Answer, assemble_answer, error_answer, extract_tags
from .config import STRATEGY_NAMES, StrategyConfig
from .expand import STOP_WORDS, content_words, expand_query
from .loops import Notebook, NotebookEntry, answer_notebook, answer_self_reflective
from .prompts import AugmentedPrompt, ContextBlock, build_prompt
from .retrieve import (
    COMMUNITY_PREFIX,
    rerank_cot,
    retrieve_corrective,
    retrieve_graph,
    retrieve_vanilla,
)
from .runner import STRATEGIES, StrategyDeps, run_strategy

__all__ = [
    "Answer",
    "AugmentedPrompt",
    "COMMUNITY_PREFIX",
    "ContextBlock",
    "Notebook",
    "NotebookEntry",
    "STOP_WORDS",
    "STRATEGIES",
    "STRATEGY_NAMES",
    "StrategyConfig",
    "StrategyDeps",
    "answer_notebook",
    "answer_self_reflective",
    "assemble_answer",
    "build_prompt",
    "content_words",
    "error_answer",
    "expand_query",
    "extract_tags",
    "rerank_cot",
    "retrieve_corrective",
    "retrieve_graph",
    "retrieve_vanilla",
    "run_strategy",
]
