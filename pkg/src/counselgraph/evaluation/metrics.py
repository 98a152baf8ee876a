"""Automated response metrics: greedy-matching BERTScore and sentence
cosine.

The BERTScore here is the plain greedy-matching formulation over whatever
token-embedding provider produced the matrices: no idf weighting and no
baseline rescaling. Scores are therefore comparable to each other, not to
numbers computed with a different encoder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from counselgraph.errors import CounselGraphError
from counselgraph.retrieval.vectors import DimMismatchError


class MetricError(CounselGraphError):
    pass


class EmptyMatrixError(MetricError):
    pass


@dataclass
class TokenEmbeddingMatrix:
    """Rows are per-token embedding vectors; all rows share one dim."""

    rows: np.ndarray  # shape (token_count, dim)

    def __post_init__(self) -> None:
        arr = np.asarray(self.rows, dtype=np.float64)
        if arr.ndim != 2:
            raise MetricError(f"expected a 2-d matrix, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise EmptyMatrixError(f"matrix must be at least 1x1, got {arr.shape}")
        self.rows = arr

    @property
    def token_count(self) -> int:
        return int(self.rows.shape[0])

    @property
    def dim(self) -> int:
        return int(self.rows.shape[1])


@dataclass
class BertScore:
    precision: float
    recall: float
    f1: float


def _norm_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise MetricError("token embedding rows must be non-zero")
    return matrix / norms


def bertscore_f1(candidate: TokenEmbeddingMatrix, reference: TokenEmbeddingMatrix) -> BertScore:
    """Greedy matching: precision averages each candidate token's best cosine
    against the reference tokens, recall the reverse, F1 the harmonic mean.

    Identical matrices score exactly (1.0, 1.0, 1.0).
    """
    if candidate.dim != reference.dim:
        raise DimMismatchError(candidate.dim, reference.dim)
    if np.array_equal(candidate.rows, reference.rows):
        return BertScore(1.0, 1.0, 1.0)
    sim = _norm_rows(candidate.rows) @ _norm_rows(reference.rows).T
    sim = np.clip(sim, -1.0, 1.0)
    precision = float(np.mean(np.max(sim, axis=1)))
    recall = float(np.mean(np.max(sim, axis=0)))
    if precision + recall == 0.0:
        return BertScore(precision, recall, 0.0)
    f1 = 2.0 * precision * recall / (precision + recall)
    return BertScore(precision, recall, f1)


def sentence_cosine(candidate_vec: Sequence[float], reference_vec: Sequence[float]) -> float:
    """Cosine of two sentence embeddings, reported as a percentage."""
    from counselgraph.retrieval.vectors import cosine_similarity

    return cosine_similarity(candidate_vec, reference_vec) * 100.0
