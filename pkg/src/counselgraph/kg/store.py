"""Typed in-memory property graph for counseling knowledge.

Five node kinds (causes, effects, interventions, outcomes, categories) and
nine relation kinds, each relation constrained to a fixed pair of endpoint
kinds. Edges are rejected up front when they violate the endpoint rule, and
`validate_graph` re-checks the same rules post-hoc for graphs assembled from
files.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from counselgraph.errors import CounselGraphError


class NodeKind(enum.Enum):
    CAUSE = "Cause"
    EFFECT = "Effect"
    INTERVENTION = "Intervention"
    OUTCOME = "Outcome"
    CATEGORY = "Category"


class RelationKind(enum.Enum):
    MITIGATES = "MITIGATES"
    LEADS_TO = "LEADS_TO"
    CAUSES = "CAUSES"
    ADDRESSES = "ADDRESSES"
    BELONGS_TO = "BELONGS_TO"
    COMPLEMENTS = "COMPLEMENTS"
    RELATED_TO = "RELATED_TO"
    EXACERBATES = "EXACERBATES"
    REQUIRES = "REQUIRES"


_ANY: FrozenSet[NodeKind] = frozenset(NodeKind)
# Categories are terminal groupings: anything may belong to a category, but a
# category may not belong to another one.
_NON_CATEGORY: FrozenSet[NodeKind] = frozenset(k for k in NodeKind if k is not NodeKind.CATEGORY)

ENDPOINT_RULES: Dict[RelationKind, Tuple[FrozenSet[NodeKind], FrozenSet[NodeKind]]] = {
    RelationKind.MITIGATES: (frozenset({NodeKind.INTERVENTION}), frozenset({NodeKind.EFFECT})),
    RelationKind.LEADS_TO: (frozenset({NodeKind.INTERVENTION}), frozenset({NodeKind.OUTCOME})),
    RelationKind.CAUSES: (frozenset({NodeKind.CAUSE}), frozenset({NodeKind.EFFECT})),
    RelationKind.ADDRESSES: (frozenset({NodeKind.INTERVENTION}), frozenset({NodeKind.CAUSE})),
    RelationKind.BELONGS_TO: (_NON_CATEGORY, frozenset({NodeKind.CATEGORY})),
    RelationKind.COMPLEMENTS: (frozenset({NodeKind.INTERVENTION}), frozenset({NodeKind.INTERVENTION})),
    RelationKind.RELATED_TO: (_ANY, _ANY),
    RelationKind.EXACERBATES: (frozenset({NodeKind.CAUSE}), frozenset({NodeKind.CAUSE})),
    RelationKind.REQUIRES: (frozenset({NodeKind.INTERVENTION}), frozenset({NodeKind.INTERVENTION})),
}


def endpoint_rule_allows(kind: RelationKind, source_kind: NodeKind, target_kind: NodeKind) -> bool:
    """True when an edge of `kind` may run from `source_kind` to `target_kind`."""
    sources, targets = ENDPOINT_RULES[kind]
    return source_kind in sources and target_kind in targets


class GraphError(CounselGraphError):
    pass


class DuplicateIdError(GraphError):
    pass


class EmptyLabelError(GraphError):
    pass


class MissingEndpointError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class KindViolationError(GraphError):
    """Edge endpoint kinds do not satisfy the relation's rule."""

    def __init__(self, kind: RelationKind, source_kind: NodeKind, target_kind: NodeKind):
        sources, targets = ENDPOINT_RULES[kind]
        expected = "{%s} -> {%s}" % (
            ", ".join(sorted(k.value for k in sources)),
            ", ".join(sorted(k.value for k in targets)),
        )
        super().__init__(
            f"{kind.value} requires {expected}, got {source_kind.value} -> {target_kind.value}"
        )
        self.kind = kind
        self.source_kind = source_kind
        self.target_kind = target_kind


@dataclass
class KgNode:
    id: str
    label: str
    kind: NodeKind
    attributes: Dict[str, str] = field(default_factory=dict)


@dataclass
class KgEdge:
    id: str
    source: str
    target: str
    kind: RelationKind
    provenance: List[str] = field(default_factory=list)


class KnowledgeGraph:
    """Mutable while being built; treat as frozen once handed to readers.

    All mutation goes through `add_node`/`add_edge`, which validate before
    inserting so a rejected call leaves the graph untouched.
    """

    def __init__(self) -> None:
        self.nodes: Dict[str, KgNode] = {}
        self.edges: Dict[str, KgEdge] = {}
        self._outgoing: Dict[str, List[str]] = {}
        self._incoming: Dict[str, List[str]] = {}
        self._triples: Set[Tuple[str, str, RelationKind]] = set()

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_node(self, node_id: str) -> bool:
        return node_id in self.nodes

    def node(self, node_id: str) -> KgNode:
        return self.nodes[node_id]

    def add_node(self, node: KgNode) -> None:
        if not node.label or not node.label.strip():
            raise EmptyLabelError(f"node {node.id!r} has a blank label")
        if node.id in self.nodes:
            raise DuplicateIdError(f"node id {node.id!r} already present")
        self.nodes[node.id] = node
        self._outgoing[node.id] = []
        self._incoming[node.id] = []

    def add_edge(self, edge: KgEdge) -> None:
        if edge.id in self.edges:
            raise DuplicateIdError(f"edge id {edge.id!r} already present")
        if edge.source not in self.nodes:
            raise MissingEndpointError(f"edge {edge.id!r}: unknown source node {edge.source!r}")
        if edge.target not in self.nodes:
            raise MissingEndpointError(f"edge {edge.id!r}: unknown target node {edge.target!r}")
        source_kind = self.nodes[edge.source].kind
        target_kind = self.nodes[edge.target].kind
        if not endpoint_rule_allows(edge.kind, source_kind, target_kind):
            raise KindViolationError(edge.kind, source_kind, target_kind)
        triple = (edge.source, edge.target, edge.kind)
        if triple in self._triples:
            raise DuplicateEdgeError(
                f"duplicate edge {edge.source!r} -{edge.kind.value}-> {edge.target!r}"
            )
        self.edges[edge.id] = edge
        self._triples.add(triple)
        self._outgoing[edge.source].append(edge.id)
        self._incoming[edge.target].append(edge.id)

    def _insert_edge_unchecked(self, edge: KgEdge) -> None:
        # Deserialization path: violations are collected by validate_graph
        # afterwards instead of raised one at a time here.
        self.edges[edge.id] = edge
        self._triples.add((edge.source, edge.target, edge.kind))
        self._outgoing.setdefault(edge.source, []).append(edge.id)
        self._incoming.setdefault(edge.target, []).append(edge.id)

    def has_triple(self, source: str, target: str, kind: RelationKind) -> bool:
        return (source, target, kind) in self._triples

    def out_edges(self, node_id: str, kinds: Optional[Iterable[RelationKind]] = None) -> List[KgEdge]:
        wanted = set(kinds) if kinds is not None else None
        edges = [self.edges[eid] for eid in self._outgoing.get(node_id, [])]
        if wanted is not None:
            edges = [e for e in edges if e.kind in wanted]
        return edges

    def in_edges(self, node_id: str, kinds: Optional[Iterable[RelationKind]] = None) -> List[KgEdge]:
        wanted = set(kinds) if kinds is not None else None
        edges = [self.edges[eid] for eid in self._incoming.get(node_id, [])]
        if wanted is not None:
            edges = [e for e in edges if e.kind in wanted]
        return edges

    def nodes_of_kind(self, kind: NodeKind) -> List[KgNode]:
        return [n for n in self.nodes.values() if n.kind is kind]


@dataclass
class StatsReport:
    node_count: int
    edge_count: int
    nodes_by_kind: Dict[NodeKind, int]
    edges_by_kind: Dict[RelationKind, int]


def graph_stats(graph: KnowledgeGraph) -> StatsReport:
    """Node/edge totals plus per-kind counts; per-kind counts partition the totals."""
    nodes_by_kind = {kind: 0 for kind in NodeKind}
    for node in graph.nodes.values():
        nodes_by_kind[node.kind] += 1
    edges_by_kind = {kind: 0 for kind in RelationKind}
    for edge in graph.edges.values():
        edges_by_kind[edge.kind] += 1
    return StatsReport(
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        nodes_by_kind=nodes_by_kind,
        edges_by_kind=edges_by_kind,
    )
