"""Traversal and ranking over the knowledge graph.

Three retrieval primitives feed the grounded-generation pipeline:

* lexical node matching (query tokens against node labels),
* causal-chain enumeration (simple paths over CAUSES/EXACERBATES edges
  seeded at matched cause nodes),
* intervention ranking, both query-targeted (via ADDRESSES/MITIGATES links
  to matched problems) and query-free (beneficial out-degree).

Everything here is a pure function of (graph, query, config); ties break
lexicographically by node id so output is deterministic across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from counselgraph.errors import CounselGraphError
from counselgraph.kg.store import KnowledgeGraph, NodeKind, RelationKind

CHAIN_RELATIONS = (RelationKind.CAUSES, RelationKind.EXACERBATES)
BENEFICIAL_RELATIONS = (RelationKind.MITIGATES, RelationKind.ADDRESSES, RelationKind.LEADS_TO)
COMPANION_RELATIONS = (RelationKind.COMPLEMENTS, RelationKind.REQUIRES)


class EmptyQueryError(CounselGraphError):
    pass


class ConfigError(CounselGraphError):
    pass


@dataclass(frozen=True)
class KgRetrievalConfig:
    max_interventions: int = 5
    max_chains: int = 10
    max_general: int = 8
    max_chain_length: int = 4

    def __post_init__(self) -> None:
        for name in ("max_interventions", "max_chains", "max_general", "max_chain_length"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")


@dataclass(frozen=True)
class NodeMatch:
    node_id: str
    match_score: float


@dataclass(frozen=True)
class CausalChain:
    node_ids: Tuple[str, ...]
    relation_kinds: Tuple[RelationKind, ...]
    relevance: float

    def fingerprint(self) -> str:
        parts = [self.node_ids[0]]
        for kind, node_id in zip(self.relation_kinds, self.node_ids[1:]):
            parts.append(f"--{kind.value}--> {node_id}")
        return " ".join(parts)


@dataclass(frozen=True)
class InterventionSuggestion:
    intervention_id: str
    addressed_causes: Tuple[str, ...]
    mitigated_effects: Tuple[str, ...]
    companions: Tuple[str, ...]
    score: float


def tokenize(text: str) -> List[str]:
    """Case-folded whitespace tokens; works the same for Bangla and Latin text."""
    return [t.casefold() for t in text.split() if t]


def match_nodes(graph: KnowledgeGraph, query_terms: Sequence[str]) -> List[NodeMatch]:
    """Score = |query tokens ∩ label tokens| / |label tokens| over case-folded
    token sets; zero-score nodes are dropped."""
    query_tokens = {t.casefold() for t in query_terms if t and t.strip()}
    if not query_tokens:
        raise EmptyQueryError("no query tokens left after normalization")
    matches = []
    for node in graph.nodes.values():
        label_tokens = set(tokenize(node.label))
        if not label_tokens:
            continue
        overlap = len(query_tokens & label_tokens)
        if overlap:
            matches.append(NodeMatch(node.id, overlap / len(label_tokens)))
    matches.sort(key=lambda m: (-m.match_score, m.node_id))
    return matches


def _companions(graph: KnowledgeGraph, intervention_id: str) -> Tuple[str, ...]:
    return tuple(sorted(e.target for e in graph.out_edges(intervention_id, COMPANION_RELATIONS)))


def find_causal_chains(
    graph: KnowledgeGraph,
    seeds: Sequence[NodeMatch],
    config: Optional[KgRetrievalConfig] = None,
) -> List[CausalChain]:
    """Enumerate simple CAUSES/EXACERBATES paths (1..max_chain_length edges)
    starting at matched cause nodes; rank by summed seed scores of on-path
    nodes, then by node-id sequence."""
    config = config or KgRetrievalConfig()
    seed_scores: Dict[str, float] = {}
    for match in seeds:
        seed_scores[match.node_id] = match.match_score

    start_ids = sorted(
        node_id
        for node_id in seed_scores
        if graph.has_node(node_id) and graph.node(node_id).kind is NodeKind.CAUSE
    )

    found: Dict[Tuple[str, ...], CausalChain] = {}

    def walk(path: List[str], kinds: List[RelationKind]) -> None:
        if kinds:
            key = tuple(path)
            if key not in found:
                relevance = sum(seed_scores.get(node_id, 0.0) for node_id in path)
                found[key] = CausalChain(key, tuple(kinds), relevance)
        if len(kinds) >= config.max_chain_length:
            return
        for edge in graph.out_edges(path[-1], CHAIN_RELATIONS):
            if edge.target in path:
                continue
            path.append(edge.target)
            kinds.append(edge.kind)
            walk(path, kinds)
            path.pop()
            kinds.pop()

    for start in start_ids:
        walk([start], [])

    chains = sorted(found.values(), key=lambda c: (-c.relevance, c.node_ids))
    return chains[: config.max_chains]


def find_interventions_for(
    graph: KnowledgeGraph,
    problems: Sequence[NodeMatch],
    config: Optional[KgRetrievalConfig] = None,
) -> List[InterventionSuggestion]:
    """Interventions linked to matched problems: ADDRESSES into matched causes,
    MITIGATES into matched effects. Score adds the match score of every linked
    problem."""
    config = config or KgRetrievalConfig()
    scores: Dict[str, float] = {}
    addressed: Dict[str, List[str]] = {}
    mitigated: Dict[str, List[str]] = {}

    for match in problems:
        if not graph.has_node(match.node_id):
            continue
        kind = graph.node(match.node_id).kind
        if kind is NodeKind.CAUSE:
            relation, bucket = RelationKind.ADDRESSES, addressed
        elif kind is NodeKind.EFFECT:
            relation, bucket = RelationKind.MITIGATES, mitigated
        else:
            continue
        for edge in graph.in_edges(match.node_id, (relation,)):
            scores[edge.source] = scores.get(edge.source, 0.0) + match.match_score
            bucket.setdefault(edge.source, []).append(match.node_id)

    suggestions = [
        InterventionSuggestion(
            intervention_id=node_id,
            addressed_causes=tuple(sorted(addressed.get(node_id, []))),
            mitigated_effects=tuple(sorted(mitigated.get(node_id, []))),
            companions=_companions(graph, node_id),
            score=score,
        )
        for node_id, score in scores.items()
    ]
    suggestions.sort(key=lambda s: (-s.score, s.intervention_id))
    return suggestions[: config.max_interventions]


def general_effective_interventions(
    graph: KnowledgeGraph,
    config: Optional[KgRetrievalConfig] = None,
) -> List[InterventionSuggestion]:
    """All interventions ranked by out-degree over MITIGATES/ADDRESSES/LEADS_TO."""
    config = config or KgRetrievalConfig()
    suggestions = []
    for node in graph.nodes_of_kind(NodeKind.INTERVENTION):
        beneficial = graph.out_edges(node.id, BENEFICIAL_RELATIONS)
        suggestions.append(
            InterventionSuggestion(
                intervention_id=node.id,
                addressed_causes=tuple(
                    sorted(e.target for e in beneficial if e.kind is RelationKind.ADDRESSES)
                ),
                mitigated_effects=tuple(
                    sorted(e.target for e in beneficial if e.kind is RelationKind.MITIGATES)
                ),
                companions=_companions(graph, node.id),
                score=float(len(beneficial)),
            )
        )
    suggestions.sort(key=lambda s: (-s.score, s.intervention_id))
    return suggestions[: config.max_general]
