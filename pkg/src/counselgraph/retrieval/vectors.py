"""Vector primitives for dense retrieval."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from counselgraph.errors import CounselGraphError


class VectorError(CounselGraphError):
    pass


class DimMismatchError(VectorError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class ZeroVectorError(VectorError):
    pass


def as_vector(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise VectorError(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


def cosine_similarity(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine of the angle between two vectors.

    Identical inputs return exactly 1.0; zero vectors are rejected.
    """
    va = as_vector(a)
    vb = as_vector(b)
    if va.shape[0] != vb.shape[0]:
        raise DimMismatchError(va.shape[0], vb.shape[0])
    norm_a = float(np.linalg.norm(va))
    norm_b = float(np.linalg.norm(vb))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVectorError("cosine similarity is undefined for a zero vector")
    if np.array_equal(va, vb):
        return 1.0
    value = float(np.dot(va, vb) / (norm_a * norm_b))
    # numerical noise can push the ratio a hair outside [-1, 1]
    return max(-1.0, min(1.0, value))


def unit_vector(values: Sequence[float]) -> np.ndarray:
    arr = as_vector(values)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise ZeroVectorError("cannot normalize a zero vector")
    return arr / norm
