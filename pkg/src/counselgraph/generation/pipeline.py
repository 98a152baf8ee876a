"""Draft generation: prompt in, cited draft out, with retry handling."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

from counselgraph.generation.clients import (
    ClientError,
    GenerationClient,
    GenerationParams,
    GenerationResult,
)
from counselgraph.generation.prompts import PromptBundle

DEFAULT_GENERATION_RETRIES = 3

# Instruction used by the optional two-stage variant. Stage one restructures
# the graph evidence in the model's own words; stage two drafts the reply
# with that summary appended.
STAGE_ONE_INSTRUCTION = (
    "Restate the evidence below as a short numbered list of the most "
    "relevant facts, keeping every citation marker next to the fact it "
    "supports.\n\n"
)


@dataclass
class DraftResponse:
    text: str
    mode: str
    model_id: str
    temperature: float
    max_output_tokens: int
    cited_chunk_ids: List[str] = field(default_factory=list)
    cited_chain_fingerprints: List[str] = field(default_factory=list)
    created_at: str = ""
    model_latency_ms: float = 0.0
    truncated: bool = False
    retry_count: int = 0
    family: str = ""
    usage: Dict[str, int] = field(default_factory=dict)


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def extract_citations(text: str, markers: Dict[str, str]) -> List[str]:
    """Ids behind the markers that actually appear in the text, in marker
    order, deduplicated."""
    cited: List[str] = []
    for marker, target in markers.items():
        if marker in text and target not in cited:
            cited.append(target)
    return cited


def generate_draft(
    client: GenerationClient,
    bundle: PromptBundle,
    params: GenerationParams,
    retries: int = DEFAULT_GENERATION_RETRIES,
    two_stage: bool = False,
    sleep: Callable[[float], None] = lambda _: None,
    clock: Callable[[], datetime] = _utc_now,
    timer: Callable[[], float] = time.perf_counter,
) -> DraftResponse:
    """Run the client with up to `retries` extra attempts on retryable
    errors. With two_stage=True a first call summarizes the context block and
    the summary is appended to the prompt before drafting."""
    retry_count = 0

    def call(target_bundle: PromptBundle) -> GenerationResult:
        nonlocal retry_count
        attempt = 0
        while True:
            try:
                return client.generate(target_bundle, params)
            except ClientError as exc:
                if not exc.retryable or attempt >= retries:
                    raise
                attempt += 1
                retry_count += 1
                sleep(0.5 * attempt)

    started = timer()
    prompt_bundle = bundle
    if two_stage:
        stage_one = PromptBundle(
            template_id=bundle.template_id,
            mode=bundle.mode,
            system=bundle.system,
            text=STAGE_ONE_INSTRUCTION + bundle.text,
            snippet_markers=dict(bundle.snippet_markers),
            chain_markers=dict(bundle.chain_markers),
        )
        summary = call(stage_one)
        prompt_bundle = PromptBundle(
            template_id=bundle.template_id,
            mode=bundle.mode,
            system=bundle.system,
            text=bundle.text + "\n\nStructured evidence summary:\n" + summary.text,
            snippet_markers=dict(bundle.snippet_markers),
            chain_markers=dict(bundle.chain_markers),
        )
    result = call(prompt_bundle)
    latency_ms = (timer() - started) * 1000.0

    return DraftResponse(
        text=result.text,
        mode=bundle.mode,
        model_id=params.model_id,
        temperature=params.temperature,
        max_output_tokens=params.max_output_tokens,
        cited_chunk_ids=extract_citations(result.text, bundle.snippet_markers),
        cited_chain_fingerprints=extract_citations(result.text, bundle.chain_markers),
        created_at=clock().isoformat(timespec="milliseconds"),
        model_latency_ms=round(latency_ms, 3),
        truncated=result.truncated,
        retry_count=retry_count,
        family=result.family,
        usage=dict(result.usage),
    )


def draft_to_obj(draft: DraftResponse) -> Dict[str, Any]:
    """JSON-ready form, used for the append-only draft log."""
    return {
        "text": draft.text,
        "mode": draft.mode,
        "model_id": draft.model_id,
        "temperature": draft.temperature,
        "max_output_tokens": draft.max_output_tokens,
        "cited_chunk_ids": list(draft.cited_chunk_ids),
        "cited_chain_fingerprints": list(draft.cited_chain_fingerprints),
        "created_at": draft.created_at,
        "model_latency_ms": draft.model_latency_ms,
        "truncated": draft.truncated,
        "retry_count": draft.retry_count,
        "family": draft.family,
        "usage": dict(draft.usage),
    }
