"""The engine wires graph, index, providers and generation into the two
query pipelines and the rating workflow. It is transport-agnostic; the HTTP
layer and the CLI both sit on top of it."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from counselgraph.corpus.chunking import chunk_cases
from counselgraph.corpus.fixture import generate_reference_corpus
from counselgraph.corpus.records import CaseRecord, ingest_file
from counselgraph.errors import CounselGraphError
from counselgraph.evaluation.ratings import (
    CategoryAverages,
    HumanRating,
    aggregate_ratings,
    rating_to_obj,
)
from counselgraph.evaluation.reference import reference_mode_rows
from counselgraph.evaluation.comparison import compare_modes
from counselgraph.generation.clients import (
    GenerationClient,
    GenerationParams,
    MockGenerationClient,
    RemoteGenerationClient,
)
from counselgraph.generation.context import (
    GroundingContext,
    GroundingMode,
    assemble_kg_context,
    assemble_rag_context,
)
from counselgraph.generation.pipeline import DraftResponse, draft_to_obj, generate_draft
from counselgraph.generation.prompts import render_prompt
from counselgraph.kg.fixture import generate_reference_graph
from counselgraph.kg.query import (
    CausalChain,
    KgRetrievalConfig,
    find_causal_chains,
    match_nodes,
    tokenize,
)
from counselgraph.kg.serialization import load_graph
from counselgraph.kg.store import KnowledgeGraph, StatsReport, graph_stats
from counselgraph.retrieval.index import ChunkIndex, build_index, load_index
from counselgraph.retrieval.providers import (
    EmbeddingProvider,
    HashEmbeddingProvider,
    RemoteEmbeddingProvider,
)
from counselgraph.service.config import EngineConfig


class StartupError(CounselGraphError):
    pass


class QueryTooLongError(CounselGraphError):
    def __init__(self, length: int, limit: int):
        super().__init__(f"query is {length} characters, limit is {limit}")
        self.length = length
        self.limit = limit


class UnknownModeError(CounselGraphError):
    def __init__(self, mode: str):
        super().__init__(f"unknown mode {mode!r}; expected rag or kg")
        self.mode = mode


@dataclass
class QueryOverrides:
    k: Optional[int] = None
    dense_weight: Optional[float] = None
    model_id: Optional[str] = None
    temperature: Optional[float] = None
    max_output_tokens: Optional[int] = None
    two_stage: bool = False


@dataclass
class ChainView:
    marker: str
    node_ids: List[str]
    labels: List[str]
    relations: List[str]
    relevance: float
    text: str
    fingerprint: str


@dataclass
class Snapshot:
    """Immutable bundle the request paths read from; reload swaps it whole."""

    graph: KnowledgeGraph
    index: ChunkIndex
    records: List[CaseRecord] = field(default_factory=list)


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def chain_text(graph: KnowledgeGraph, chain: CausalChain) -> str:
    parts = [graph.nodes[chain.node_ids[0]].label]
    for kind, node_id in zip(chain.relation_kinds, chain.node_ids[1:]):
        parts.append(f"--{kind.value}--> {graph.nodes[node_id].label}")
    return " ".join(parts)


class Engine:
    def __init__(
        self,
        config: EngineConfig,
        clock: Callable[[], datetime] = _utc_now,
    ):
        config.validate()
        self.config = config
        self.clock = clock
        self.provider = self._make_provider()
        self.client = self._make_client()
        self._lock = threading.Lock()
        self.ratings: List[HumanRating] = []
        self.snapshot = self._load_snapshot()

    # construction ---------------------------------------------------------

    def _make_provider(self) -> EmbeddingProvider:
        if self.config.embedding_endpoint:
            return RemoteEmbeddingProvider(
                base_url=self.config.embedding_endpoint,
                model=self.config.embedding_model or "default",
                dim=self.config.embedding_dim,
                timeout=self.config.request_timeout,
            )
        return HashEmbeddingProvider(dim=self.config.embedding_dim)

    def _make_client(self) -> GenerationClient:
        if self.config.generation_endpoint:
            return RemoteGenerationClient(
                base_url=self.config.generation_endpoint,
                timeout=self.config.request_timeout,
            )
        return MockGenerationClient()

    def _load_snapshot(self) -> Snapshot:
        if self.config.graph_path:
            path = Path(self.config.graph_path)
            if not path.exists():
                raise StartupError(f"graph file not found: {path}")
            graph = load_graph(path)
        else:
            graph = generate_reference_graph()

        if self.config.corpus_path:
            path = Path(self.config.corpus_path)
            if not path.exists():
                raise StartupError(f"corpus file not found: {path}")
            records = ingest_file(path).records
        else:
            records = generate_reference_corpus()

        if self.config.index_path:
            path = Path(self.config.index_path)
            if not path.exists():
                raise StartupError(f"index file not found: {path}")
            index = load_index(path)
        else:
            chunks = chunk_cases(records)
            index, _ = build_index(chunks, self.provider)
        return Snapshot(graph=graph, index=index, records=records)

    def reload(self) -> None:
        snapshot = self._load_snapshot()
        with self._lock:
            self.snapshot = snapshot

    # query pipelines ------------------------------------------------------

    def _kg_config(self, max_chains: Optional[int] = None, max_chain_length: Optional[int] = None) -> KgRetrievalConfig:
        return KgRetrievalConfig(
            max_interventions=self.config.max_interventions,
            max_chains=max_chains or self.config.max_chains,
            max_general=self.config.max_general,
            max_chain_length=max_chain_length or self.config.max_chain_length,
        )

    def _check_query(self, query: str) -> None:
        if len(query) > self.config.max_query_chars:
            raise QueryTooLongError(len(query), self.config.max_query_chars)

    def assemble(self, query: str, mode: str, overrides: Optional[QueryOverrides] = None) -> GroundingContext:
        overrides = overrides or QueryOverrides()
        self._check_query(query)
        snapshot = self.snapshot
        if mode == GroundingMode.RAG_ONLY:
            return assemble_rag_context(
                query,
                snapshot.index,
                self.provider,
                k=overrides.k or self.config.retrieval_k,
            )
        if mode == GroundingMode.KG_GROUNDED:
            return assemble_kg_context(query, snapshot.graph, self._kg_config())
        raise UnknownModeError(mode)

    def query(
        self,
        query: str,
        mode: str,
        overrides: Optional[QueryOverrides] = None,
    ) -> "tuple[DraftResponse, GroundingContext]":
        overrides = overrides or QueryOverrides()
        context = self.assemble(query, mode, overrides)
        template_id = (
            self.config.rag_template
            if mode == GroundingMode.RAG_ONLY
            else self.config.kg_template
        )
        bundle = render_prompt(context, query, template_id)
        params = GenerationParams(
            model_id=overrides.model_id or self.config.generation_model,
            temperature=(
                overrides.temperature
                if overrides.temperature is not None
                else self.config.temperature
            ),
            max_output_tokens=overrides.max_output_tokens or self.config.max_output_tokens,
        )
        draft = generate_draft(
            self.client,
            bundle,
            params,
            retries=self.config.retries,
            two_stage=overrides.two_stage,
            clock=self.clock,
        )
        self._log_draft(draft)
        return draft, context

    def _log_draft(self, draft: DraftResponse) -> None:
        if not self.config.draft_log_path:
            return
        line = json.dumps(draft_to_obj(draft), ensure_ascii=False) + "\n"
        with self._lock:
            with open(self.config.draft_log_path, "a", encoding="utf-8") as handle:
                handle.write(line)

    # graph views ----------------------------------------------------------

    def graph_stats(self) -> StatsReport:
        return graph_stats(self.snapshot.graph)

    def chains(
        self,
        query: str,
        max_chains: Optional[int] = None,
        max_chain_length: Optional[int] = None,
    ) -> List[ChainView]:
        self._check_query(query)
        graph = self.snapshot.graph
        matches = match_nodes(graph, tokenize(query))
        config = self._kg_config(max_chains=max_chains, max_chain_length=max_chain_length)
        found = find_causal_chains(graph, matches, config)
        return [
            ChainView(
                marker=f"[C{i}]",
                node_ids=list(chain.node_ids),
                labels=[graph.nodes[n].label for n in chain.node_ids],
                relations=[k.value for k in chain.relation_kinds],
                relevance=chain.relevance,
                text=chain_text(graph, chain),
                fingerprint=chain.fingerprint(),
            )
            for i, chain in enumerate(found, start=1)
        ]

    # ratings and reports --------------------------------------------------

    def add_ratings(self, ratings: List[HumanRating]) -> int:
        with self._lock:
            self.ratings.extend(ratings)
        return len(ratings)

    def rating_aggregates(self) -> List[CategoryAverages]:
        with self._lock:
            captured = list(self.ratings)
        if not captured:
            return []
        return aggregate_ratings(captured, allow_missing=True)

    def comparison_report(self) -> Dict[str, Any]:
        rag_rows, kg_rows = reference_mode_rows()
        comparisons = compare_modes(rag_rows, kg_rows)
        aggregates = self.rating_aggregates()
        return {
            "aggregates": [
                {
                    "model_id": a.model_id,
                    "mode": a.mode,
                    "by_category": dict(a.by_category),
                    "overall": a.overall,
                }
                for a in aggregates
            ],
            "reference": [
                {
                    "model_id": c.model_id,
                    "metric": c.metric,
                    "rag_value": c.rag_value,
                    "kg_value": c.kg_value,
                    "delta": c.delta,
                    "improved": c.improved,
                }
                for c in comparisons
            ],
        }

    def ratings_jsonl(self) -> str:
        with self._lock:
            captured = list(self.ratings)
        return "".join(
            json.dumps(rating_to_obj(r), ensure_ascii=False) + "\n" for r in captured
        )

    # health ---------------------------------------------------------------

    def health(self) -> Dict[str, Any]:
        snapshot = self.snapshot
        return {
            "status": "ok",
            "graph": {
                "status": "ok",
                "nodes": snapshot.graph.node_count,
                "edges": snapshot.graph.edge_count,
            },
            "index": {"status": "ok", "entries": len(snapshot.index)},
            "providers": {
                "embedding": self.provider.name,
                "generation": self.client.family,
                "offline": not (
                    self.config.embedding_endpoint or self.config.generation_endpoint
                ),
            },
        }
