"""HTTP API: ask with multi-turn sessions, sources, admin ingest, health."""

from __future__ import annotations

import threading
from pathlib import Path
from urllib.parse import unquote

import requests
from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..config import AppConfig, make_embedder, make_gateway
from ..errors import (
    BadConfig,
    CollectionNotIndexed,
    GhostwriterError,
    UnknownStrategy,
)
from ..ingest import RecordStore, record_to_json
from ..modelgw.gateway import ModelGateway
from ..pipeline import build_collection_index, ingest_collection, load_collection_artifacts
from ..sources import resolve_sources
from ..strategies import STRATEGY_NAMES, StrategyConfig, StrategyDeps, run_strategy
from .sessions import SessionTable, Turn

SOURCES_FROM_RETRIEVAL_FLAG = "sources_from_retrieval"


class AskRequest(BaseModel):
    question: str
    session_id: str | None = None
    collection_id: str | None = None
    strategy: str | None = None
    k: int | None = None
    tau: float | None = None
    max_iterations: int | None = None
    rerank: bool | None = None


class IngestRequest(BaseModel):
    endpoint: str
    collection_id: str


class _Snapshot:
    def __init__(self, index, graph, assignment):
        self.index = index
        self.graph = graph
        self.assignment = assignment


class ServiceState:
    def __init__(self, config: AppConfig, gateway: ModelGateway | None = None,
                 embedder=None):
        self.config = config
        self.store = RecordStore(config.store_path)
        self.gateway = gateway or make_gateway(config)
        self.embedder = embedder or make_embedder(config)
        self.sessions = SessionTable(ttl_seconds=config.session_ttl_seconds)
        self.snapshots: dict[str, _Snapshot] = {}
        self.ingest_lock = threading.Lock()
        self.snapshot_guard = threading.Lock()

    def snapshot(self, collection_id: str) -> _Snapshot:
        with self.snapshot_guard:
            snapshot = self.snapshots.get(collection_id)
            if snapshot is None:
                index, graph, assignment = load_collection_artifacts(
                    self.store, collection_id
                )
                snapshot = _Snapshot(index, graph, assignment)
                self.snapshots[collection_id] = snapshot
        return snapshot

    def swap_snapshot(self, collection_id: str) -> None:
        index, graph, assignment = load_collection_artifacts(self.store, collection_id)
        with self.snapshot_guard:
            self.snapshots[collection_id] = _Snapshot(index, graph, assignment)

    def resolve_collection(self, requested: str | None) -> str:
        if requested:
            return requested
        collections = self.store.collections()
        if len(collections) == 1:
            return collections[0]
        raise HTTPException(
            status_code=400,
            detail="collection_id required: store holds "
                   f"{len(collections)} collections",
        )

    def model_endpoint_reachable(self) -> bool:
        endpoint = self.gateway.endpoint
        if getattr(endpoint, "deterministic", False):
            return True
        base_url = getattr(endpoint, "base_url", None)
        if base_url is None:
            return True
        try:
            requests.get(base_url, timeout=2.0)
            return True
        except requests.RequestException:
            return False


def create_app(config: AppConfig, gateway: ModelGateway | None = None,
               embedder=None, frontend_dir: str | Path | None = None) -> FastAPI:
    state = ServiceState(config, gateway=gateway, embedder=embedder)
    app = FastAPI(title="ghostwriter", version="0.1.0")
    app.state.service = state

    @app.post("/api/ask")
    def ask(request: AskRequest):
        question = request.question.strip()
        if not question:
            raise HTTPException(status_code=400, detail="question must be non-blank")

        session = None
        if request.session_id:
            session = state.sessions.get(request.session_id)
            if session is None:
                raise HTTPException(status_code=404, detail="unknown session_id")
            collection_id = session.collection_id
        else:
            collection_id = state.resolve_collection(request.collection_id)

        defaults = state.config.defaults
        try:
            cfg = StrategyConfig.from_overrides(
                request.strategy,
                k=request.k if request.k is not None else defaults["k"],
                tau=request.tau if request.tau is not None else defaults["tau"],
                max_iterations=(
                    request.max_iterations
                    if request.max_iterations is not None
                    else defaults["max_iterations"]
                ),
                rerank=request.rerank,
            )
        except (UnknownStrategy, BadConfig) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        try:
            snapshot = state.snapshot(collection_id)
        except CollectionNotIndexed as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc

        if session is None:
            session = state.sessions.create(collection_id)

        deps = StrategyDeps(
            store=state.store,
            index=snapshot.index,
            embedder=state.embedder,
            gateway=state.gateway,
            graph=snapshot.graph,
            assignment=snapshot.assignment,
        )
        with session.lock:
            history = session.history()
            try:
                answer = run_strategy(question, cfg, deps, history)
            except CollectionNotIndexed as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except GhostwriterError as exc:
                raise HTTPException(status_code=500, detail=str(exc)) from exc

            error_flags = [f for f in answer.flags if f.startswith("error:")]
            if error_flags:
                status = 503 if "EndpointUnreachable" in error_flags[0] else 500
                raise HTTPException(
                    status_code=status,
                    detail={"error": error_flags[0], "trace": answer.trace},
                )

            sources, from_retrieval = resolve_sources(
                state.store, snapshot.assignment, answer, cfg.k
            )
            flags = list(answer.flags)
            if from_retrieval:
                flags.append(SOURCES_FROM_RETRIEVAL_FLAG)
            state.sessions.append_turn(
                session, Turn(question, answer.text, list(answer.citations))
            )

        return {
            "session_id": session.session_id,
            "answer": answer.text,
            "uncited": answer.uncited,
            "citations": answer.citations,
            "valid_tags": answer.valid_tags,
            "sources": sources,
            "flags": flags,
            "strategy": cfg.strategy,
            "trace": answer.trace,
        }

    @app.get("/api/collections")
    def collections():
        return {"collections": state.store.collections()}

    @app.get("/api/collections/{collection_id}/sources")
    def list_sources(collection_id: str, page: int = 0):
        records = state.store.list_records(collection_id)
        if not records:
            raise HTTPException(status_code=404, detail=f"unknown collection {collection_id!r}")
        size = state.config.page_size
        window = records[page * size : (page + 1) * size]
        return {
            "collection_id": collection_id,
            "page": page,
            "page_size": size,
            "total": len(records),
            "sources": [{"id": r.persistent_id, "title": r.title} for r in window],
        }

    @app.get("/api/sources/{persistent_id:path}")
    def get_source(persistent_id: str):
        record = state.store.get(persistent_id)
        if record is None:
            record = state.store.get(unquote(persistent_id))
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown source {persistent_id!r}")
        return record_to_json(record)

    @app.post("/api/admin/ingest")
    def admin_ingest(request: IngestRequest):
        with state.ingest_lock:
            try:
                ingest = ingest_collection(state.config, request.endpoint,
                                           request.collection_id)
                index = build_collection_index(state.config, request.collection_id,
                                               state.gateway)
            except GhostwriterError as exc:
                raise HTTPException(status_code=500, detail=str(exc)) from exc
            state.swap_snapshot(request.collection_id)
        return {"ingest": ingest.as_dict(), "index": index.as_dict()}

    @app.get("/api/strategies")
    def strategies():
        return {
            "strategies": list(STRATEGY_NAMES),
            "defaults": StrategyConfig(
                k=state.config.defaults["k"],
                tau=state.config.defaults["tau"],
                max_iterations=state.config.defaults["max_iterations"],
            ).as_dict(),
        }

    @app.get("/api/health")
    def health():
        index_loaded = any(
            state.store.index_path(cid).exists() for cid in state.store.collections()
        ) or bool(state.snapshots)
        reachable = state.model_endpoint_reachable()
        return {
            "status": "ok" if reachable else "degraded",
            "index_loaded": index_loaded,
            "model_endpoint_reachable": reachable,
        }

    candidates = (
        [Path(frontend_dir)]
        if frontend_dir
        else [
            Path("frontend") / "public",
            Path(__file__).resolve().parents[3] / "frontend" / "public",
        ]
    )
    for static_dir in candidates:
        if (static_dir / "index.html").is_file():
            app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
            break

    return app
