"""Grounding context assembly for the two response modes.

RagOnly carries up to 3 retrieved snippets and no graph evidence. KgGrounded
carries graph evidence (interventions, causal chains, a general list) and may
optionally carry snippets as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from counselgraph.errors import CounselGraphError
from counselgraph.kg.query import (
    CausalChain,
    InterventionSuggestion,
    KgRetrievalConfig,
    find_causal_chains,
    find_interventions_for,
    general_effective_interventions,
    match_nodes,
    tokenize,
)
from counselgraph.kg.store import KnowledgeGraph
from counselgraph.retrieval.index import ChunkIndex
from counselgraph.retrieval.providers import EmbeddingProvider

RAG_SNIPPET_LIMIT = 3


class GroundingError(CounselGraphError):
    pass


class GroundingMode:
    RAG_ONLY = "rag_only"
    KG_GROUNDED = "kg_grounded"
    ALL = (RAG_ONLY, KG_GROUNDED)


@dataclass
class Snippet:
    marker: str  # "[S1]", "[S2]", ...
    chunk_id: str
    text: str


@dataclass
class GroundingContext:
    mode: str
    snippets: List[Snippet] = field(default_factory=list)
    interventions: List[InterventionSuggestion] = field(default_factory=list)
    chains: List[CausalChain] = field(default_factory=list)
    general: List[InterventionSuggestion] = field(default_factory=list)
    labels: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in GroundingMode.ALL:
            raise GroundingError(f"unknown grounding mode: {self.mode!r}")
        if self.mode == GroundingMode.RAG_ONLY:
            if self.interventions or self.chains or self.general:
                raise GroundingError("rag_only context cannot carry graph evidence")
            if len(self.snippets) > RAG_SNIPPET_LIMIT:
                raise GroundingError(
                    f"rag_only allows at most {RAG_SNIPPET_LIMIT} snippets, "
                    f"got {len(self.snippets)}"
                )

    def check_limits(self, config: KgRetrievalConfig) -> None:
        if len(self.interventions) > config.max_interventions:
            raise GroundingError("interventions exceed the configured limit")
        if len(self.chains) > config.max_chains:
            raise GroundingError("chains exceed the configured limit")
        if len(self.general) > config.max_general:
            raise GroundingError("general list exceeds the configured limit")


def assemble_rag_context(
    query: str,
    index: ChunkIndex,
    provider: EmbeddingProvider,
    k: int = RAG_SNIPPET_LIMIT,
) -> GroundingContext:
    """Top-k retrieval, in search order, with markers [S1]..[Sk]."""
    if k < 1 or k > RAG_SNIPPET_LIMIT:
        raise GroundingError(f"k must be in 1..{RAG_SNIPPET_LIMIT}, got {k}")
    hits = index.search(query, provider, top_k=k)
    snippets = [
        Snippet(marker=f"[S{i}]", chunk_id=hit.chunk_id, text=hit.text)
        for i, hit in enumerate(hits, start=1)
    ]
    return GroundingContext(mode=GroundingMode.RAG_ONLY, snippets=snippets)


def _collect_labels(graph: KnowledgeGraph, context: GroundingContext) -> Dict[str, str]:
    ids: "set[str]" = set()
    for suggestion in list(context.interventions) + list(context.general):
        ids.add(suggestion.intervention_id)
        ids.update(suggestion.addressed_causes)
        ids.update(suggestion.mitigated_effects)
        ids.update(suggestion.companions)
    for chain in context.chains:
        ids.update(chain.node_ids)
    return {node_id: graph.nodes[node_id].label for node_id in sorted(ids) if node_id in graph.nodes}


def assemble_kg_context(
    query: str,
    graph: KnowledgeGraph,
    config: KgRetrievalConfig = KgRetrievalConfig(),
    snippets: "List[Snippet] | None" = None,
) -> GroundingContext:
    """Graph evidence for the query. Snippets may be passed in to combine
    retrieval with graph grounding; by default the context is graph-only."""
    matches = match_nodes(graph, tokenize(query))
    context = GroundingContext(
        mode=GroundingMode.KG_GROUNDED,
        snippets=list(snippets or []),
        interventions=find_interventions_for(graph, matches, config),
        chains=find_causal_chains(graph, matches, config),
        general=general_effective_interventions(graph, config),
    )
    context.labels = _collect_labels(graph, context)
    context.check_limits(config)
    return context
