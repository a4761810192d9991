"""Pull raw metadata documents from a repository API or a fixture directory.

The HTTP flavor speaks a search endpoint with offset paging
(``/api/search?q=*&type=dataset&subtree=<collection>&start=<n>``) plus a
per-dataset export endpoint.  The fixture flavor reads one JSON document
per file so the whole pipeline runs offline.
"""

from __future__ import annotations

import json
from pathlib import Path

import requests

from ..errors import CollectionNotFound, MalformedPage, RepoUnavailable
from .croissant import is_croissant
from .nativejson import _persistent_id, is_native_export

PAGE_SIZE = 50
REQUEST_TIMEOUT = 30.0


def _doc_sort_key(doc) -> str:
    """Best-effort persistent id of a raw document, for stable ordering."""
    if isinstance(doc, dict):
        if is_croissant(doc):
            identifier = doc.get("identifier") or doc.get("@id") or ""
            if isinstance(identifier, list):
                identifier = identifier[0] if identifier else ""
            return str(identifier)
        if is_native_export(doc):
            return _persistent_id(doc)
        for key in ("global_id", "persistentId", "persistent_id", "@id"):
            if doc.get(key):
                return str(doc[key])
    return ""


def _fetch_fixture_dir(directory: Path) -> list:
    docs = []
    for path in sorted(directory.iterdir()):
        if path.suffix not in (".json", ".jsonld"):
            continue
        try:
            docs.append(json.loads(path.read_text(encoding="utf-8")))
        except json.JSONDecodeError as exc:
            raise MalformedPage(f"{path.name}: {exc}") from exc
    docs.sort(key=_doc_sort_key)
    return docs


def _get_json(url: str, params: dict | None = None):
    try:
        response = requests.get(url, params=params, timeout=REQUEST_TIMEOUT)
    except requests.RequestException as exc:
        raise RepoUnavailable(f"cannot reach {url}: {exc}") from exc
    if response.status_code == 404:
        raise CollectionNotFound(url)
    if response.status_code >= 500:
        raise RepoUnavailable(f"{url} answered {response.status_code}")
    if response.status_code >= 400:
        raise RepoUnavailable(f"{url} answered {response.status_code}")
    try:
        return response.json()
    except ValueError as exc:
        raise MalformedPage(f"{url} returned a non-JSON body") from exc


def _fetch_http(endpoint: str, collection_id: str) -> list:
    base = endpoint.rstrip("/")
    search_url = f"{base}/api/search"
    start = 0
    global_ids: list[str] = []
    while True:
        page = _get_json(
            search_url,
            params={
                "q": "*",
                "type": "dataset",
                "subtree": collection_id,
                "per_page": str(PAGE_SIZE),
                "start": str(start),
            },
        )
        data = page.get("data", {})
        items = data.get("items", [])
        global_ids.extend(str(item["global_id"]) for item in items if item.get("global_id"))
        start += len(items)
        total = int(data.get("total_count", 0))
        if not items or start >= total:
            break

    docs = []
    for global_id in sorted(set(global_ids)):
        docs.append(
            _get_json(
                f"{base}/api/datasets/export",
                params={"exporter": "dataverse_json", "persistentId": global_id},
            )
        )
    docs.sort(key=_doc_sort_key)
    return docs


def fetch_collection(endpoint: str, collection_id: str) -> list:
    """Every raw dataset document in the collection, ordered by persistent id.

    ``endpoint`` is either a repository base URL or a local directory of
    JSON export files (fixture mode).
    """
    if endpoint.startswith(("http://", "https://")):
        return _fetch_http(endpoint, collection_id)
    directory = Path(endpoint)
    if not directory.is_dir():
        raise CollectionNotFound(f"fixture directory not found: {endpoint}")
    return _fetch_fixture_dir(directory)
