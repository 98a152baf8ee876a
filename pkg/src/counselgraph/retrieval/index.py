"""Flat chunk index: exhaustive cosine search with an optional sparse mix."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from counselgraph.corpus.chunking import Chunk
from counselgraph.errors import CounselGraphError
from counselgraph.retrieval.providers import (
    DEFAULT_RETRIES,
    EmbeddingProvider,
    call_with_retries,
)
from counselgraph.retrieval.vectors import DimMismatchError, cosine_similarity

DEFAULT_BATCH_SIZE = 16
DEFAULT_TOP_K = 5


class IndexError_(CounselGraphError):
    pass


class EmptyIndexError(IndexError_):
    pass


class DimDriftError(IndexError_):
    def __init__(self, expected: int, got: int, chunk_id: str):
        super().__init__(
            f"embedding for {chunk_id} has dim {got}, index expects {expected}"
        )
        self.expected = expected
        self.got = got
        self.chunk_id = chunk_id


class IndexParseError(IndexError_):
    pass


@dataclass
class IndexEntry:
    chunk_id: str
    case_id: str
    session_index: int
    text: str
    vector: np.ndarray


@dataclass
class SearchHit:
    chunk_id: str
    case_id: str
    session_index: int
    text: str
    dense_score: float
    sparse_score: float
    combined_score: float


@dataclass
class BuildStats:
    chunk_count: int
    batch_count: int
    retry_count: int
    dim: int


def _tokens(text: str) -> "set[str]":
    return set(text.casefold().split())


def sparse_overlap(query: str, text: str) -> float:
    """Fraction of distinct query tokens that appear in the text."""
    query_tokens = _tokens(query)
    if not query_tokens:
        return 0.0
    return len(query_tokens & _tokens(text)) / len(query_tokens)


class ChunkIndex:
    def __init__(self, provider_name: str, dim: int, entries: Optional[List[IndexEntry]] = None):
        self.provider_name = provider_name
        self.dim = dim
        self.entries: List[IndexEntry] = list(entries or [])

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, entry: IndexEntry) -> None:
        if entry.vector.shape[0] != self.dim:
            raise DimDriftError(self.dim, entry.vector.shape[0], entry.chunk_id)
        self.entries.append(entry)

    def search(
        self,
        query: str,
        provider: EmbeddingProvider,
        top_k: int = DEFAULT_TOP_K,
        dense_weight: float = 1.0,
    ) -> List[SearchHit]:
        """Rank all entries for the query.

        dense_weight 1.0 means pure cosine; otherwise cosine is mapped to
        [0, 1] and mixed with the token-overlap score so both parts share a
        scale. Ties break on chunk id.
        """
        if not self.entries:
            raise EmptyIndexError("index has no entries")
        if not 0.0 <= dense_weight <= 1.0:
            raise IndexError_(f"dense_weight must be in [0, 1], got {dense_weight}")
        query_vector = provider.embed([query])[0]
        if query_vector.shape[0] != self.dim:
            raise DimMismatchError(self.dim, query_vector.shape[0])

        hits: List[SearchHit] = []
        for entry in self.entries:
            dense = cosine_similarity(query_vector, entry.vector)
            sparse = sparse_overlap(query, entry.text)
            if dense_weight == 1.0:
                combined = dense
            else:
                combined = dense_weight * (dense + 1.0) / 2.0 + (1.0 - dense_weight) * sparse
            hits.append(
                SearchHit(
                    chunk_id=entry.chunk_id,
                    case_id=entry.case_id,
                    session_index=entry.session_index,
                    text=entry.text,
                    dense_score=dense,
                    sparse_score=sparse,
                    combined_score=combined,
                )
            )
        hits.sort(key=lambda h: (-h.combined_score, h.chunk_id))
        return hits[:top_k]


def build_index(
    chunks: Sequence[Chunk],
    provider: EmbeddingProvider,
    batch_size: int = DEFAULT_BATCH_SIZE,
    retries: int = DEFAULT_RETRIES,
    sleep: Callable[[float], None] = lambda _: None,
) -> "tuple[ChunkIndex, BuildStats]":
    if batch_size < 1:
        raise IndexError_(f"batch_size must be >= 1, got {batch_size}")
    index = ChunkIndex(provider.name, provider.dim)
    retry_count = 0
    batch_count = 0

    def counting_sleep(delay: float) -> None:
        nonlocal retry_count
        retry_count += 1
        sleep(delay)

    for start in range(0, len(chunks), batch_size):
        batch = chunks[start : start + batch_size]
        batch_count += 1
        vectors = call_with_retries(
            lambda b=batch: provider.embed([chunk.text for chunk in b]),
            retries=retries,
            sleep=counting_sleep,
        )
        for chunk, vector in zip(batch, vectors):
            if vector.shape[0] != provider.dim:
                raise DimDriftError(provider.dim, vector.shape[0], chunk.id)
            index.add(
                IndexEntry(
                    chunk_id=chunk.id,
                    case_id=chunk.case_id,
                    session_index=chunk.session_index,
                    text=chunk.text,
                    vector=np.asarray(vector, dtype=np.float64),
                )
            )
    stats = BuildStats(
        chunk_count=len(index),
        batch_count=batch_count,
        retry_count=retry_count,
        dim=provider.dim,
    )
    return index, stats


def index_to_document(index: ChunkIndex) -> dict:
    return {
        "provider": index.provider_name,
        "dim": index.dim,
        "entries": [
            {
                "chunk_id": entry.chunk_id,
                "case_id": entry.case_id,
                "session_index": entry.session_index,
                "text": entry.text,
                "vector": [float(v) for v in entry.vector],
            }
            for entry in index.entries
        ],
    }


def index_from_document(obj: dict) -> ChunkIndex:
    if not isinstance(obj, dict):
        raise IndexParseError("index document must be an object")
    for key in ("provider", "dim", "entries"):
        if key not in obj:
            raise IndexParseError(f'index document missing "{key}"')
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise IndexParseError(f"dim must be a positive integer, got {dim!r}")
    index = ChunkIndex(str(obj["provider"]), dim)
    for position, raw in enumerate(obj["entries"]):
        if not isinstance(raw, dict):
            raise IndexParseError(f"entry {position} must be an object")
        try:
            vector = np.asarray(raw["vector"], dtype=np.float64)
            entry = IndexEntry(
                chunk_id=str(raw["chunk_id"]),
                case_id=str(raw["case_id"]),
                session_index=int(raw["session_index"]),
                text=str(raw["text"]),
                vector=vector,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise IndexParseError(f"entry {position} is malformed: {exc}") from exc
        if vector.ndim != 1 or vector.shape[0] != dim:
            raise DimDriftError(dim, 0 if vector.ndim != 1 else vector.shape[0], entry.chunk_id)
        index.entries.append(entry)
    return index


def save_index(index: ChunkIndex, path: Union[str, Path]) -> None:
    document = index_to_document(index)
    Path(path).write_text(
        json.dumps(document, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def load_index(path: Union[str, Path]) -> ChunkIndex:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IndexParseError(f"invalid JSON: {exc.msg}") from exc
    return index_from_document(obj)
