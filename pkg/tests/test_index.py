"""kNN against an exhaustive-scan oracle, plus binary persistence checks."""

import math

import numpy as np
import pytest

from ghostwriter.errors import DimensionMismatch, IndexCorrupt
from ghostwriter.vindex import VectorIndex, load_index, normalize


def brute_force_topk(ids, rows, query, k):
    """Oracle: per-entry dot products via plain Python accumulation, full
    sort, same tie-break (descending score, ascending id)."""
    scored = []
    for chunk_id, row in zip(ids, rows):
        score = math.fsum(float(a) * float(b) for a, b in zip(row, query))
        scored.append((chunk_id, score))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


def build_random_index(rng, n, dim, tag="hash-test"):
    index = VectorIndex(dim=dim, model_tag=tag)
    ids = []
    for i in range(n):
        chunk_id = f"doc{i:03d}#0"
        index.add(chunk_id, rng.standard_normal(dim))
        ids.append(chunk_id)
    return index, ids


def test_query_equal_to_stored_vector_ranks_it_first():
    rng = np.random.default_rng(1)
    index, ids = build_random_index(rng, 20, 8)
    stored = index.vector_for(ids[7])
    result = index.knn(normalize(stored), 1)
    assert result.items[0].chunk_id == ids[7]
    assert result.items[0].score >= 1.0 - 1e-6


def test_matches_oracle_on_seeded_instance():
    rng = np.random.default_rng(42)
    index, ids = build_random_index(rng, 50, 8)
    query = normalize(rng.standard_normal(8))
    result = index.knn(query, 5)
    expected = brute_force_topk(
        ids, [index.vector_for(i) for i in ids], query.values, 5
    )
    assert [item.chunk_id for item in result.items] == [cid for cid, _ in expected]


def test_k_zero_returns_empty():
    rng = np.random.default_rng(2)
    index, _ = build_random_index(rng, 5, 4)
    assert index.knn(normalize(rng.standard_normal(4)), 0).items == []


def test_k_beyond_size_returns_all_sorted():
    rng = np.random.default_rng(3)
    index, _ = build_random_index(rng, 6, 4)
    result = index.knn(normalize(rng.standard_normal(4)), 100)
    assert len(result.items) == 6
    scores = [item.score for item in result.items]
    assert scores == sorted(scores, reverse=True)


def test_exact_ties_break_by_ascending_chunk_id():
    index = VectorIndex(dim=2)
    same = [1.0, 0.0]
    for chunk_id in ["z#0", "a#0", "m#0"]:
        index.add(chunk_id, same)
    result = index.knn(normalize([1.0, 0.0]), 3)
    assert [item.chunk_id for item in result.items] == ["a#0", "m#0", "z#0"]


def test_every_stored_vector_retrieves_itself_first():
    rng = np.random.default_rng(21)
    index, ids = build_random_index(rng, 60, 16)
    for chunk_id in ids:
        result = index.knn(normalize(index.vector_for(chunk_id)), 1)
        assert result.items[0].chunk_id == chunk_id
        assert result.items[0].score >= 1.0 - 1e-6


def test_query_dimension_mismatch():
    index = VectorIndex(dim=4)
    index.add("a#0", [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(DimensionMismatch):
        index.knn(normalize([1.0, 0.0]), 1)


def test_duplicate_chunk_id_rejected():
    index = VectorIndex(dim=2)
    index.add("a#0", [1.0, 0.0])
    with pytest.raises(ValueError):
        index.add("a#0", [0.0, 1.0])


def test_persist_load_answers_identically(tmp_path):
    rng = np.random.default_rng(11)
    index, _ = build_random_index(rng, 40, 12, tag="hash-12")
    path = tmp_path / "demo.vec"
    index.persist(path)
    loaded = load_index(path)

    assert loaded.model_tag == "hash-12"
    assert loaded.dim == 12
    for _ in range(10):
        query = normalize(rng.standard_normal(12))
        before = index.knn(query, 7)
        after = loaded.knn(query, 7)
        assert [i.chunk_id for i in before.items] == [i.chunk_id for i in after.items]
        assert [i.score for i in before.items] == [i.score for i in after.items]


def test_empty_index_round_trips(tmp_path):
    index = VectorIndex(dim=8, model_tag="hash-8")
    path = tmp_path / "empty.vec"
    index.persist(path)
    loaded = load_index(path)
    assert len(loaded) == 0
    assert loaded.knn(normalize(np.ones(8)), 5).items == []


def test_truncated_file_raises_index_corrupt(tmp_path):
    rng = np.random.default_rng(5)
    index, _ = build_random_index(rng, 10, 4)
    path = tmp_path / "cut.vec"
    index.persist(path)
    blob = path.read_bytes()
    path.write_bytes(blob[: len(blob) // 2])
    with pytest.raises(IndexCorrupt):
        load_index(path)


def test_flipped_byte_raises_index_corrupt(tmp_path):
    rng = np.random.default_rng(6)
    index, _ = build_random_index(rng, 10, 4)
    path = tmp_path / "flip.vec"
    index.persist(path)
    blob = bytearray(path.read_bytes())
    blob[-1] ^= 0xFF
    path.write_bytes(bytes(blob))
    with pytest.raises(IndexCorrupt):
        load_index(path)


def test_garbage_file_raises_index_corrupt(tmp_path):
    path = tmp_path / "garbage.vec"
    path.write_bytes(b"this is not an index at all")
    with pytest.raises(IndexCorrupt):
        load_index(path)
