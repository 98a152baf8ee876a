"""Draft pipeline: citations, retries, recorded parameters."""

from datetime import datetime, timezone

import pytest

from counselgraph.generation.clients import (
    ClientError,
    GenerationClient,
    GenerationParams,
    GenerationResult,
    MockGenerationClient,
)
from counselgraph.generation.pipeline import (
    STAGE_ONE_INSTRUCTION,
    DraftResponse,
    draft_to_obj,
    extract_citations,
    generate_draft,
)
from counselgraph.generation.prompts import PromptBundle


def make_bundle(snippets=None, chains=None, text="user prompt"):
    return PromptBundle(
        template_id="kg_v1",
        mode="kg_grounded",
        system="system",
        text=text,
        snippet_markers=dict(snippets or {}),
        chain_markers=dict(chains or {}),
    )


class ScriptedClient(GenerationClient):
    """Returns canned results, optionally failing first."""

    family = "scripted"

    def __init__(self, texts, failures=0):
        self.texts = list(texts)
        self.failures = failures
        self.calls = []

    def generate(self, bundle, params):
        self.calls.append(bundle.text)
        if self.failures > 0:
            self.failures -= 1
            raise ClientError("503 from upstream", status=503, retryable=True)
        text = self.texts.pop(0)
        return GenerationResult(text=text, model_id=params.model_id,
                                family=self.family, usage={"output_tokens": 1})


class TestExtractCitations:
    def test_marker_order_not_text_order(self):
        markers = {"[S1]": "c1", "[S2]": "c2"}
        assert extract_citations("uses [S2] then [S1]", markers) == ["c1", "c2"]

    def test_absent_markers_skipped(self):
        markers = {"[S1]": "c1", "[S2]": "c2"}
        assert extract_citations("only [S2] here", markers) == ["c2"]

    def test_duplicate_targets_deduplicated(self):
        markers = {"[S1]": "same", "[S2]": "same"}
        assert extract_citations("[S1] and [S2]", markers) == ["same"]

    def test_no_markers(self):
        assert extract_citations("plain text", {}) == []


class TestGenerateDraft:
    def test_mock_end_to_end_citations(self):
        bundle = make_bundle(
            snippets={"[S1]": "case-001:s1:c1", "[S2]": "case-002:s1:c1"},
            chains={"[C1]": "a --CAUSES--> b"},
        )
        draft = generate_draft(
            MockGenerationClient(), bundle, GenerationParams(model_id="mock-model")
        )
        assert draft.cited_chunk_ids == ["case-001:s1:c1", "case-002:s1:c1"]
        assert draft.cited_chain_fingerprints == ["a --CAUSES--> b"]
        assert draft.mode == "kg_grounded"
        assert draft.family == "mock"

    def test_params_recorded_verbatim(self):
        draft = generate_draft(
            MockGenerationClient(),
            make_bundle(),
            GenerationParams(model_id="mock-model", temperature=0.2,
                             max_output_tokens=7960),
        )
        assert draft.model_id == "mock-model"
        assert draft.temperature == 0.2
        assert draft.max_output_tokens == 7960

    def test_retryable_failures_then_success(self):
        client = ScriptedClient(["final draft"], failures=2)
        sleeps = []
        draft = generate_draft(
            client, make_bundle(), GenerationParams(model_id="m"),
            retries=3, sleep=sleeps.append,
        )
        assert draft.text == "final draft"
        assert draft.retry_count == 2
        assert sleeps == [0.5, 1.0]

    def test_retry_budget_exhaustion_raises(self):
        client = ScriptedClient(["never"], failures=5)
        with pytest.raises(ClientError):
            generate_draft(client, make_bundle(), GenerationParams(model_id="m"),
                           retries=1, sleep=lambda _: None)

    def test_non_retryable_error_propagates(self):
        class Fatal(GenerationClient):
            def generate(self, bundle, params):
                raise ClientError("bad request", status=400)

        with pytest.raises(ClientError):
            generate_draft(Fatal(), make_bundle(), GenerationParams(model_id="m"))

    def test_injected_clock_controls_created_at(self):
        fixed = datetime(2024, 5, 1, 12, 0, 0, tzinfo=timezone.utc)
        draft = generate_draft(
            MockGenerationClient(), make_bundle(),
            GenerationParams(model_id="m"), clock=lambda: fixed,
        )
        assert draft.created_at == "2024-05-01T12:00:00.000+00:00"

    def test_latency_measured_with_injected_timer(self):
        ticks = iter([10.0, 10.25])
        draft = generate_draft(
            MockGenerationClient(), make_bundle(),
            GenerationParams(model_id="m"), timer=lambda: next(ticks),
        )
        assert draft.model_latency_ms == 250.0

    def test_single_stage_calls_client_once(self):
        client = ScriptedClient(["draft text"])
        generate_draft(client, make_bundle(text="base prompt"),
                       GenerationParams(model_id="m"))
        assert client.calls == ["base prompt"]

    def test_two_stage_appends_summary(self):
        client = ScriptedClient(["1. fact [C1]", "draft text"])
        bundle = make_bundle(chains={"[C1]": "fp"}, text="base prompt")
        draft = generate_draft(client, bundle, GenerationParams(model_id="m"),
                               two_stage=True)
        assert len(client.calls) == 2
        assert client.calls[0] == STAGE_ONE_INSTRUCTION + "base prompt"
        assert client.calls[1] == "base prompt\n\nStructured evidence summary:\n1. fact [C1]"
        assert draft.text == "draft text"


def test_draft_to_obj_is_json_ready():
    draft = DraftResponse(
        text="t", mode="rag_only", model_id="m", temperature=0.2,
        max_output_tokens=100, cited_chunk_ids=["c1"],
        cited_chain_fingerprints=[], created_at="2024-05-01T00:00:00.000+00:00",
        model_latency_ms=1.5, truncated=False, retry_count=0, family="mock",
        usage={"output_tokens": 1},
    )
    obj = draft_to_obj(draft)
    assert obj["text"] == "t"
    assert obj["cited_chunk_ids"] == ["c1"]
    assert obj["model_latency_ms"] == 1.5
    assert set(obj) == {
        "text", "mode", "model_id", "temperature", "max_output_tokens",
        "cited_chunk_ids", "cited_chain_fingerprints", "created_at",
        "model_latency_ms", "truncated", "retry_count", "family", "usage",
    }
