"""Generation clients: the deterministic mock used in tests and offline
runs, and a remote chat-style HTTP client."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import httpx

from counselgraph.errors import CounselGraphError
from counselgraph.generation.prompts import PromptBundle

DEFAULT_TEMPERATURE = 0.2
DEFAULT_MAX_OUTPUT_TOKENS = 7960
DEFAULT_TIMEOUT = 60.0
GENERATION_API_KEY_ENV = "GENERATION_API_KEY"


class ClientError(CounselGraphError):
    def __init__(self, message: str, status: Optional[int] = None, retryable: bool = False):
        super().__init__(message)
        self.status = status
        self.retryable = retryable


class ClientTimeout(ClientError):
    def __init__(self, message: str):
        super().__init__(message, status=None, retryable=True)


@dataclass(frozen=True)
class GenerationParams:
    model_id: str
    temperature: float = DEFAULT_TEMPERATURE
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS

    def __post_init__(self) -> None:
        if not self.model_id:
            raise ClientError("model_id is required")
        if not 0.0 <= self.temperature <= 2.0:
            raise ClientError(f"temperature must be in [0, 2], got {self.temperature}")
        if self.max_output_tokens < 1:
            raise ClientError(
                f"max_output_tokens must be >= 1, got {self.max_output_tokens}"
            )


@dataclass
class GenerationResult:
    text: str
    model_id: str
    family: str
    usage: Dict[str, int] = field(default_factory=dict)
    truncated: bool = False


class GenerationClient:
    """Interface: generate(bundle, params) -> GenerationResult."""

    family: str = "base"

    def generate(self, bundle: PromptBundle, params: GenerationParams) -> GenerationResult:
        raise NotImplementedError


class MockGenerationClient(GenerationClient):
    """Deterministic stand-in. The draft echoes the citation markers present
    in the bundle (snippets first, then chains) and ends with a digest of the
    prompt and params, so equal inputs produce byte-equal drafts.

    Output length is counted in whitespace tokens; when it would exceed
    params.max_output_tokens the draft is cut short and flagged truncated.
    """

    family = "mock"

    def generate(self, bundle: PromptBundle, params: GenerationParams) -> GenerationResult:
        digest = hashlib.sha256(
            (
                bundle.text
                + "\x00"
                + bundle.system
                + "\x00"
                + params.model_id
                + "\x00"
                + repr(params.temperature)
                + "\x00"
                + repr(params.max_output_tokens)
            ).encode("utf-8")
        ).hexdigest()[:12]

        lines: List[str] = [
            "Thank the client for sharing and name the pressure they described.",
        ]
        snippet_markers = list(bundle.snippet_markers)[:2]
        if snippet_markers:
            lines.append(
                "Earlier cases "
                + " ".join(snippet_markers)
                + " describe a similar situation and what helped there."
            )
        chain_markers = list(bundle.chain_markers)[:2]
        if chain_markers:
            lines.append(
                "The causal picture "
                + " ".join(chain_markers)
                + " suggests where to intervene first."
            )
        lines.append(
            "Agree on one small, concrete step before the next session and "
            "check how it went."
        )
        lines.append(f"(draft {digest})")
        text = "\n".join(lines)

        tokens = text.split()
        truncated = False
        if len(tokens) > params.max_output_tokens:
            text = " ".join(tokens[: params.max_output_tokens])
            truncated = True

        return GenerationResult(
            text=text,
            model_id=params.model_id,
            family=self.family,
            usage={
                "prompt_tokens": len(bundle.text.split()) + len(bundle.system.split()),
                "output_tokens": len(text.split()),
            },
            truncated=truncated,
        )


class RemoteGenerationClient(GenerationClient):
    """Chat-style HTTP client. POSTs {model, messages, temperature,
    max_tokens} and expects {text, usage} back. The API key is read from the
    environment, never from configuration files."""

    def __init__(
        self,
        base_url: str,
        family: str = "remote",
        timeout: float = DEFAULT_TIMEOUT,
        api_key: Optional[str] = None,
        client: Optional[httpx.Client] = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.family = family
        self.timeout = timeout
        self._api_key = api_key if api_key is not None else os.environ.get(GENERATION_API_KEY_ENV, "")
        self._client = client

    def _headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self._api_key:
            headers["Authorization"] = f"Bearer {self._api_key}"
        return headers

    def generate(self, bundle: PromptBundle, params: GenerationParams) -> GenerationResult:
        payload: Dict[str, Any] = {
            "model": params.model_id,
            "messages": [
                {"role": "system", "content": bundle.system},
                {"role": "user", "content": bundle.text},
            ],
            "temperature": params.temperature,
            "max_tokens": params.max_output_tokens,
        }
        try:
            if self._client is not None:
                response = self._client.post(
                    f"{self.base_url}/chat",
                    json=payload,
                    headers=self._headers(),
                    timeout=self.timeout,
                )
            else:
                response = httpx.post(
                    f"{self.base_url}/chat",
                    json=payload,
                    headers=self._headers(),
                    timeout=self.timeout,
                )
        except httpx.TimeoutException as exc:
            raise ClientTimeout(f"generation request timed out: {exc}") from exc
        except httpx.HTTPError as exc:
            raise ClientError(f"generation request failed: {exc}", retryable=True) from exc

        if response.status_code == 429 or response.status_code >= 500:
            raise ClientError(
                f"generation server returned {response.status_code}",
                status=response.status_code,
                retryable=True,
            )
        if response.status_code != 200:
            raise ClientError(
                f"generation server returned {response.status_code}",
                status=response.status_code,
            )

        try:
            obj = response.json()
            text = obj["text"]
            usage = obj.get("usage", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise ClientError(f"malformed generation response: {exc}") from exc
        return GenerationResult(
            text=str(text),
            model_id=params.model_id,
            family=self.family,
            usage={k: int(v) for k, v in usage.items()},
            truncated=bool(obj.get("truncated", False)),
        )
