"""Embedding providers: a deterministic offline hash provider and a remote
HTTP provider. API keys come from the environment only."""

from __future__ import annotations

import hashlib
import os
import time
from typing import Callable, List, Optional, Sequence, TypeVar

import httpx
import numpy as np

from counselgraph.errors import CounselGraphError

DEFAULT_DIM = 64
DEFAULT_TIMEOUT = 60.0
DEFAULT_RETRIES = 3
API_KEY_ENV = "EMBEDDINGS_API_KEY"

T = TypeVar("T")


class ProviderError(CounselGraphError):
    def __init__(self, message: str, retryable: bool = False):
        super().__init__(message)
        self.retryable = retryable


class EmbeddingProvider:
    """Interface: name, dim and batch embedding of texts."""

    name: str = "base"
    dim: int = 0

    def embed(self, texts: Sequence[str]) -> List[np.ndarray]:
        raise NotImplementedError


class HashEmbeddingProvider(EmbeddingProvider):
    """Offline provider. Each coordinate is derived from sha256 of the text
    plus the coordinate index, mapped into [-1, 1], then the vector is scaled
    to unit length. Fully deterministic across runs and platforms."""

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim < 1:
            raise ProviderError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self.name = f"hash-{dim}"

    def _vector(self, text: str) -> np.ndarray:
        encoded = text.encode("utf-8")
        values = np.empty(self.dim, dtype=np.float64)
        block = b""
        counter = 0
        needed = self.dim * 4
        while len(block) < needed:
            digest = hashlib.sha256(encoded + counter.to_bytes(4, "big")).digest()
            block += digest
            counter += 1
        raw = np.frombuffer(block[:needed], dtype=">u4").astype(np.float64)
        values = raw / float(2**32 - 1) * 2.0 - 1.0
        norm = float(np.linalg.norm(values))
        if norm == 0.0:
            # all-zero is unreachable in practice; keep a fixed fallback
            values[0] = 1.0
            return values
        return values / norm

    def embed(self, texts: Sequence[str]) -> List[np.ndarray]:
        return [self._vector(text) for text in texts]


class RemoteEmbeddingProvider(EmbeddingProvider):
    """POSTs {"model": ..., "input": [...]} and expects
    {"data": [{"embedding": [...]}, ...]} in input order."""

    def __init__(
        self,
        base_url: str,
        model: str,
        dim: int,
        timeout: float = DEFAULT_TIMEOUT,
        api_key: Optional[str] = None,
        client: Optional[httpx.Client] = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.dim = dim
        self.name = model
        self.timeout = timeout
        self._api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self._client = client

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self._api_key:
            headers["Authorization"] = f"Bearer {self._api_key}"
        return headers

    def embed(self, texts: Sequence[str]) -> List[np.ndarray]:
        payload = {"model": self.model, "input": list(texts)}
        try:
            if self._client is not None:
                response = self._client.post(
                    f"{self.base_url}/embeddings",
                    json=payload,
                    headers=self._headers(),
                    timeout=self.timeout,
                )
            else:
                response = httpx.post(
                    f"{self.base_url}/embeddings",
                    json=payload,
                    headers=self._headers(),
                    timeout=self.timeout,
                )
        except httpx.TimeoutException as exc:
            raise ProviderError(f"embedding request timed out: {exc}", retryable=True) from exc
        except httpx.HTTPError as exc:
            raise ProviderError(f"embedding request failed: {exc}", retryable=True) from exc

        if response.status_code == 429 or response.status_code >= 500:
            raise ProviderError(
                f"embedding server returned {response.status_code}", retryable=True
            )
        if response.status_code != 200:
            raise ProviderError(f"embedding server returned {response.status_code}")

        try:
            data = response.json()["data"]
            vectors = [np.asarray(item["embedding"], dtype=np.float64) for item in data]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProviderError(f"malformed embedding response: {exc}") from exc
        if len(vectors) != len(texts):
            raise ProviderError(
                f"expected {len(texts)} embeddings, got {len(vectors)}"
            )
        return vectors


def call_with_retries(
    fn: Callable[[], T],
    retries: int = DEFAULT_RETRIES,
    backoff: float = 0.5,
    sleep: Callable[[float], None] = time.sleep,
) -> T:
    """Run fn, retrying retryable ProviderErrors up to `retries` extra times
    with linear backoff. Non-retryable errors propagate immediately."""
    attempt = 0
    while True:
        try:
            return fn()
        except ProviderError as exc:
            if not exc.retryable or attempt >= retries:
                raise
            attempt += 1
            sleep(backoff * attempt)
