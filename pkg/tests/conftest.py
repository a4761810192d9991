from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def croissant_docs() -> list[dict]:
    docs = []
    for path in sorted((FIXTURES / "croissant").glob("*.jsonld")):
        docs.append(json.loads(path.read_text(encoding="utf-8")))
    return docs


@pytest.fixture
def native_docs() -> list[dict]:
    docs = []
    for path in sorted((FIXTURES / "native").glob("*.json")):
        docs.append(json.loads(path.read_text(encoding="utf-8")))
    return docs


class _RepoHandler(BaseHTTPRequestHandler):
    """Offline stand-in for a repository API: paged search plus export."""

    exports: dict[str, dict] = {}
    page_size = 2
    collection = "demo"
    fail_mode: str | None = None

    def log_message(self, *args):  # keep test output quiet
        pass

    def _send_json(self, payload, status=200):
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        parsed = urlparse(self.path)
        params = {k: v[0] for k, v in parse_qs(parsed.query).items()}
        if self.fail_mode == "http500":
            self.send_response(500)
            self.end_headers()
            return
        if self.fail_mode == "not_json":
            body = b"<html>definitely not json</html>"
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
            return
        if parsed.path == "/api/search":
            if params.get("subtree") != self.collection:
                self._send_json({"status": "ERROR", "message": "not found"}, status=404)
                return
            ids = sorted(self.exports)
            start = int(params.get("start", "0"))
            window = ids[start : start + self.page_size]
            self._send_json(
                {
                    "status": "OK",
                    "data": {
                        "total_count": len(ids),
                        "start": start,
                        "items": [{"global_id": gid, "type": "dataset"} for gid in window],
                    },
                }
            )
        elif parsed.path == "/api/datasets/export":
            gid = params.get("persistentId", "")
            if gid not in self.exports:
                self._send_json({"status": "ERROR"}, status=404)
                return
            self._send_json(self.exports[gid])
        else:
            self._send_json({"status": "ERROR"}, status=404)


@pytest.fixture
def mini_system(tmp_path):
    """Factory for a small stored-and-indexed corpus over the hash embedder.

    build(entries) takes (persistent_id, title, description) triples and
    returns (store, index, embedder); one chunk per record by default.
    """
    from ghostwriter.ingest import ChunkConfig, RecordStore, SourceRecord, chunk_record
    from ghostwriter.vindex import HashEmbedder, VectorIndex

    def build(entries, dim=32, chunk_chars=400, overlap=0, collection_id="demo"):
        store = RecordStore(tmp_path / "store")
        embedder = HashEmbedder(dim=dim)
        index = VectorIndex(dim=dim, model_tag=embedder.model_tag)
        for pid, title, description in entries:
            record = SourceRecord(
                persistent_id=pid,
                title=title,
                description=description,
                collection_id=collection_id,
            )
            chunks = chunk_record(record, ChunkConfig(chunk_chars, overlap))
            store.upsert(record, chunks)
            for chunk, vector in zip(chunks, embedder.embed([c.text for c in chunks])):
                index.add(chunk.chunk_id, vector)
        return store, index, embedder

    return build


@pytest.fixture
def repo_server():
    """Factory: start a local repository server over the given exports."""
    servers = []

    def start(exports: dict[str, dict], collection: str = "demo",
              page_size: int = 2, fail_mode: str | None = None) -> str:
        handler = type(
            "Handler",
            (_RepoHandler,),
            {
                "exports": exports,
                "collection": collection,
                "page_size": page_size,
                "fail_mode": fail_mode,
            },
        )
        server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        servers.append(server)
        return f"http://127.0.0.1:{server.server_address[1]}"

    yield start
    for server in servers:
        server.shutdown()
        server.server_close()
