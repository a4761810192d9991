import pytest

from ghostwriter.errors import CollectionNotFound, MalformedPage, RepoUnavailable
from ghostwriter.ingest import fetch_collection
from ghostwriter.ingest.nativejson import _persistent_id


def test_fixture_dir_returns_every_document(fixtures_dir):
    docs = fetch_collection(str(fixtures_dir / "croissant"), "demo")
    assert len(docs) == 3


def test_fixture_docs_sorted_by_persistent_id(fixtures_dir):
    docs = fetch_collection(str(fixtures_dir / "croissant"), "demo")
    ids = [d["identifier"] for d in docs]
    assert ids == sorted(ids)


def test_missing_fixture_dir_raises(tmp_path):
    with pytest.raises(CollectionNotFound):
        fetch_collection(str(tmp_path / "nope"), "demo")


def test_fixture_dir_with_bad_json_raises(tmp_path):
    (tmp_path / "bad.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedPage):
        fetch_collection(str(tmp_path), "demo")


def test_http_fetch_merges_pages(repo_server, native_docs):
    exports = {_persistent_id(doc): doc for doc in native_docs}
    base = repo_server(exports, collection="demo", page_size=1)
    docs = fetch_collection(base, "demo")
    assert len(docs) == 2
    assert [_persistent_id(d) for d in docs] == sorted(exports)


def test_http_empty_collection_returns_empty_list(repo_server):
    base = repo_server({}, collection="demo")
    assert fetch_collection(base, "demo") == []


def test_http_404_raises_collection_not_found(repo_server):
    base = repo_server({}, collection="other")
    with pytest.raises(CollectionNotFound):
        fetch_collection(base, "demo")


def test_http_500_raises_repo_unavailable(repo_server):
    base = repo_server({}, fail_mode="http500")
    with pytest.raises(RepoUnavailable):
        fetch_collection(base, "demo")


def test_http_non_json_body_raises_malformed_page(repo_server):
    base = repo_server({}, fail_mode="not_json")
    with pytest.raises(MalformedPage):
        fetch_collection(base, "demo")


def test_unreachable_endpoint_raises_repo_unavailable():
    with pytest.raises(RepoUnavailable):
        fetch_collection("http://127.0.0.1:1/api", "demo")
