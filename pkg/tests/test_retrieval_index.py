"""Chunk index: build, persist, and ranked search."""

import random

import numpy as np
import pytest

from counselgraph.corpus.chunking import Chunk
from counselgraph.retrieval.index import (
    ChunkIndex,
    DimDriftError,
    EmptyIndexError,
    IndexEntry,
    IndexError_,
    IndexParseError,
    build_index,
    index_from_document,
    index_to_document,
    load_index,
    save_index,
    sparse_overlap,
)
from counselgraph.retrieval.providers import HashEmbeddingProvider, ProviderError
from counselgraph.retrieval.vectors import DimMismatchError
from oracles import slow_search


def make_chunks(texts, case_id="case-001"):
    return [
        Chunk(
            id=f"{case_id}:s1:c{i + 1}",
            case_id=case_id,
            session_index=1,
            seq=i + 1,
            text=text,
            start_word=1,
            end_word=len(text.split()),
        )
        for i, text in enumerate(texts)
    ]


class FlakyProvider(HashEmbeddingProvider):
    """Fails the first `failures` embed calls with a retryable error."""

    def __init__(self, dim=8, failures=0):
        super().__init__(dim=dim)
        self.failures = failures
        self.calls = 0

    def embed(self, texts):
        self.calls += 1
        if self.calls <= self.failures:
            raise ProviderError("synthetic throttle", retryable=True)
        return super().embed(texts)


def test_sparse_overlap_fraction_of_query_tokens():
    assert sparse_overlap("rent debt worry", "she spoke about rent and debt") == pytest.approx(2 / 3)
    assert sparse_overlap("Rent", "RENT was due") == 1.0
    assert sparse_overlap("", "anything") == 0.0


def test_build_index_embeds_every_chunk():
    provider = HashEmbeddingProvider(dim=8)
    chunks = make_chunks(["alpha text", "beta text", "gamma text"])
    index, stats = build_index(chunks, provider, batch_size=2)
    assert len(index) == 3
    assert stats.chunk_count == 3
    assert stats.batch_count == 2
    assert stats.retry_count == 0
    assert stats.dim == 8
    assert [e.chunk_id for e in index.entries] == [c.id for c in chunks]


def test_build_index_counts_retries():
    provider = FlakyProvider(dim=8, failures=2)
    chunks = make_chunks(["one", "two"])
    index, stats = build_index(chunks, provider, batch_size=16)
    assert len(index) == 2
    assert stats.retry_count == 2


def test_build_index_exhausted_retries_raise():
    provider = FlakyProvider(dim=8, failures=10)
    with pytest.raises(ProviderError):
        build_index(make_chunks(["one"]), provider, retries=2)


def test_build_index_rejects_bad_batch_size():
    with pytest.raises(IndexError_):
        build_index([], HashEmbeddingProvider(dim=8), batch_size=0)


def test_search_pure_dense_matches_brute_force():
    provider = HashEmbeddingProvider(dim=16)
    texts = [f"narrative piece number {i} about daily worries" for i in range(20)]
    index, _ = build_index(make_chunks(texts), provider)
    query = "worries about money"
    hits = index.search(query, provider, top_k=7)
    query_vector = provider.embed([query])[0]
    expected = slow_search(
        query_vector,
        [(e.chunk_id, e.vector, e.text) for e in index.entries],
        {t.casefold() for t in query.split()},
        top_k=7,
        dense_weight=1.0,
    )
    assert [h.chunk_id for h in hits] == expected


def test_search_mixed_weight_matches_brute_force():
    rng = random.Random(3)
    provider = HashEmbeddingProvider(dim=8)
    vocabulary = ["rent", "debt", "sleep", "worry", "family", "income", "food"]
    texts = [" ".join(rng.choices(vocabulary, k=6)) for _ in range(30)]
    index, _ = build_index(make_chunks(texts), provider)
    for weight in (0.0, 0.3, 0.7):
        query = "rent debt sleep"
        hits = index.search(query, provider, top_k=10, dense_weight=weight)
        query_vector = provider.embed([query])[0]
        expected = slow_search(
            query_vector,
            [(e.chunk_id, e.vector, e.text) for e in index.entries],
            {t.casefold() for t in query.split()},
            top_k=10,
            dense_weight=weight,
        )
        assert [h.chunk_id for h in hits] == expected


def test_combined_formula_recorded_on_hits():
    provider = HashEmbeddingProvider(dim=8)
    index, _ = build_index(make_chunks(["rent worry note"]), provider)
    (hit,) = index.search("rent worry", provider, top_k=1, dense_weight=0.4)
    expected = 0.4 * (hit.dense_score + 1.0) / 2.0 + 0.6 * hit.sparse_score
    assert hit.combined_score == pytest.approx(expected, abs=1e-15)
    assert hit.sparse_score == 1.0


def test_search_weight_validation():
    provider = HashEmbeddingProvider(dim=8)
    index, _ = build_index(make_chunks(["a"]), provider)
    for weight in (-0.1, 1.1):
        with pytest.raises(IndexError_):
            index.search("a", provider, dense_weight=weight)


def test_search_empty_index_raises():
    index = ChunkIndex("hash-8", 8)
    with pytest.raises(EmptyIndexError):
        index.search("anything", HashEmbeddingProvider(dim=8))


def test_search_query_dim_must_match():
    provider = HashEmbeddingProvider(dim=8)
    index, _ = build_index(make_chunks(["a"]), provider)
    with pytest.raises(DimMismatchError):
        index.search("a", HashEmbeddingProvider(dim=16))


def test_add_rejects_dim_drift():
    index = ChunkIndex("hash-8", 8)
    entry = IndexEntry("case-001:s1:c1", "case-001", 1, "text", np.zeros(4))
    with pytest.raises(DimDriftError) as excinfo:
        index.add(entry)
    assert excinfo.value.expected == 8
    assert excinfo.value.got == 4
    assert excinfo.value.chunk_id == "case-001:s1:c1"


def test_document_round_trip():
    provider = HashEmbeddingProvider(dim=8)
    index, _ = build_index(make_chunks(["first note", "second note"]), provider)
    restored = index_from_document(index_to_document(index))
    assert restored.provider_name == index.provider_name
    assert restored.dim == index.dim
    assert len(restored) == len(index)
    for a, b in zip(restored.entries, index.entries):
        assert a.chunk_id == b.chunk_id
        assert np.allclose(a.vector, b.vector)


def test_file_round_trip_preserves_ranking(tmp_path):
    provider = HashEmbeddingProvider(dim=8)
    texts = [f"note {i} about sleep and rent" for i in range(10)]
    index, _ = build_index(make_chunks(texts), provider)
    path = tmp_path / "index.json"
    save_index(index, path)
    restored = load_index(path)
    original = [h.chunk_id for h in index.search("sleep", provider)]
    reloaded = [h.chunk_id for h in restored.search("sleep", provider)]
    assert original == reloaded


@pytest.mark.parametrize(
    "doc",
    [
        "not a dict",
        {},
        {"provider": "x", "entries": []},
        {"provider": "x", "dim": 0, "entries": []},
        {"provider": "x", "dim": 4, "entries": ["bad"]},
        {"provider": "x", "dim": 4, "entries": [{"chunk_id": "a"}]},
    ],
)
def test_malformed_documents_rejected(doc):
    with pytest.raises(IndexParseError):
        index_from_document(doc)


def test_entry_vector_dim_checked_on_load():
    doc = {
        "provider": "x",
        "dim": 4,
        "entries": [
            {
                "chunk_id": "c1",
                "case_id": "case-001",
                "session_index": 1,
                "text": "t",
                "vector": [0.1, 0.2],
            }
        ],
    }
    with pytest.raises(DimDriftError):
        index_from_document(doc)


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(IndexParseError):
        load_index(path)
