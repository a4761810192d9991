"""Operator command line: ingest, index build, ask, eval, serve.

Every command is a thin wrapper over module operations; nothing lives
only here.  Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import AppConfig, make_embedder, make_gateway
from .errors import CollectionNotIndexed, GhostwriterError
from .evalkit import fabricate_marker_corpus, load_suite, run_retrieval_suite, write_report
from .ingest import RecordStore
from .pipeline import build_collection_index, ingest_collection, load_collection_artifacts
from .sources import resolve_sources
from .strategies import StrategyConfig, StrategyDeps, retrieve_vanilla, run_strategy

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    """argparse flavor that exits 1 on usage errors, with help on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="ghostwriter", description=__doc__)
    parser.add_argument("--config", help="path to the JSON config file")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_ingest = sub.add_parser("ingest", help="pull and store a collection's metadata")
    p_ingest.add_argument("--source", required=True,
                          help="repository base URL or fixture directory")
    p_ingest.add_argument("--collection", required=True)

    p_index = sub.add_parser("index", help="index maintenance")
    index_sub = p_index.add_subparsers(dest="index_command", required=True,
                                       parser_class=_Parser)
    p_build = index_sub.add_parser(
        "build", help="embed chunks, build graph, communities and summaries"
    )
    p_build.add_argument("--collection", required=True)
    p_build.add_argument("--mock-script",
                         help="scripted generator file for reproducible builds")

    p_ask = sub.add_parser("ask", help="one-shot question, prints answer and sources")
    p_ask.add_argument("question")
    p_ask.add_argument("--collection", required=True)
    p_ask.add_argument("--strategy", default=None)
    p_ask.add_argument("--k", type=int, default=None)
    p_ask.add_argument("--tau", type=float, default=None)
    p_ask.add_argument("--max-iterations", type=int, default=None)
    p_ask.add_argument("--rerank", action="store_true", default=None)
    p_ask.add_argument("--mock-script",
                       help="scripted generator file for reproducible demos")

    p_eval = sub.add_parser("eval", help="run a retrieval suite or fabricate one")
    mode = p_eval.add_mutually_exclusive_group(required=True)
    mode.add_argument("--suite", help="suite JSON file to run")
    mode.add_argument("--fabricate",
                      help="write a marker corpus plus suite.json into this directory")
    p_eval.add_argument("--collection", default=None)
    p_eval.add_argument("--cases", type=int, default=10,
                        help="marker corpus size for --fabricate")
    p_eval.add_argument("--k", type=int, default=5)
    p_eval.add_argument("--report-dir",
                        help="also render CSV and figures into this directory")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _cmd_ingest(args, config: AppConfig) -> int:
    summary = ingest_collection(config, args.source, args.collection)
    human = (
        f"{summary.records} records ({summary.inserted} inserted, "
        f"{summary.updated} updated), {summary.chunks} chunks"
    )
    if summary.unknown_fields:
        human += f"; unknown custom fields kept: {', '.join(summary.unknown_fields)}"
    _emit(args, summary.as_dict(), human)
    return EXIT_OK


def _cmd_index_build(args, config: AppConfig) -> int:
    gateway = make_gateway(config, mock_script=args.mock_script)
    summary = build_collection_index(config, args.collection, gateway)
    _emit(
        args,
        summary.as_dict(),
        f"indexed {summary.vectors} vectors; graph {summary.graph_nodes} nodes / "
        f"{summary.graph_edges} edges; {summary.communities} communities summarized",
    )
    return EXIT_OK


def _cmd_ask(args, config: AppConfig) -> int:
    store = RecordStore(config.store_path)
    index, graph, assignment = load_collection_artifacts(store, args.collection)
    gateway = make_gateway(config, mock_script=args.mock_script)
    deps = StrategyDeps(
        store=store,
        index=index,
        embedder=make_embedder(config),
        gateway=gateway,
        graph=graph,
        assignment=assignment,
    )
    cfg = StrategyConfig.from_overrides(
        args.strategy,
        k=args.k if args.k is not None else config.defaults["k"],
        tau=args.tau if args.tau is not None else config.defaults["tau"],
        max_iterations=(
            args.max_iterations
            if args.max_iterations is not None
            else config.defaults["max_iterations"]
        ),
        rerank=args.rerank,
    )
    answer = run_strategy(args.question, cfg, deps)
    error_flags = [f for f in answer.flags if f.startswith("error:")]
    if error_flags:
        print(f"generation failed: {error_flags[0]}", file=sys.stderr)
        return EXIT_RUNTIME

    sources, from_retrieval = resolve_sources(store, assignment, answer, cfg.k)
    payload = {
        "answer": answer.text,
        "citations": answer.citations,
        "uncited": answer.uncited,
        "sources": sources,
        "flags": answer.flags + (["sources_from_retrieval"] if from_retrieval else []),
        "strategy": cfg.strategy,
        "trace": answer.trace,
    }
    lines = [answer.text, "", "Sources:"]
    if sources:
        suffix = " (retrieved)" if from_retrieval else ""
        lines.extend(f"- {s['title']} ({s['id']}){suffix}" for s in sources)
    else:
        lines.append("- none")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_eval(args, config: AppConfig) -> int:
    if args.fabricate:
        suite = fabricate_marker_corpus(args.fabricate, cases=args.cases,
                                        collection_id=args.collection or "markers")
        _emit(
            args,
            {"fabricated": len(suite.cases), "directory": args.fabricate},
            f"wrote {len(suite.cases)} marker fixtures and suite.json to {args.fabricate}",
        )
        return EXIT_OK

    if not args.collection:
        raise GhostwriterError("--collection is required to run a suite")
    store = RecordStore(config.store_path)
    index, _, _ = load_collection_artifacts(store, args.collection)
    embedder = make_embedder(config)

    def retrieve(question: str, k: int):
        return retrieve_vanilla(question, StrategyConfig(k=k), index, embedder)

    suite = load_suite(args.suite)
    metrics = run_retrieval_suite(suite, retrieve, args.k)
    if args.report_dir:
        write_report(metrics, args.report_dir)
    print(json.dumps(metrics, sort_keys=True))
    return EXIT_OK


def _cmd_serve(args, config: AppConfig) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port or config.port)
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "ask": _cmd_ask,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config = AppConfig.load(args.config) if args.config else AppConfig()
    except GhostwriterError as exc:
        print(f"ghostwriter: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "index":
            return _cmd_index_build(args, config)
        return _COMMANDS[args.command](args, config)
    except CollectionNotIndexed as exc:
        print(f"ghostwriter: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except GhostwriterError as exc:
        print(f"ghostwriter: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"ghostwriter: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
