"""Flat JSON serialization of the knowledge graph.

Document layout: {"nodes": [...], "edges": [...]} with node objects
{id, label, kind, attributes} and edge objects {id, source, target, kind,
provenance}. Kind strings are the exact enum names. Unknown fields are
rejected so typos fail loudly. Loading validates the assembled graph and
refuses documents with violations.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from counselgraph.errors import CounselGraphError
from counselgraph.kg.store import KgEdge, KgNode, KnowledgeGraph, NodeKind, RelationKind
from counselgraph.kg.validation import ValidationReport, validate_graph


class ParseError(CounselGraphError):
    pass


class GraphValidationError(CounselGraphError):
    def __init__(self, report: ValidationReport):
        super().__init__(report.summary())
        self.report = report


_NODE_KEYS = {"id", "label", "kind", "attributes"}
_EDGE_KEYS = {"id", "source", "target", "kind", "provenance"}
_NODE_KINDS = {k.value: k for k in NodeKind}
_RELATION_KINDS = {k.value: k for k in RelationKind}


def _require_str(obj: Dict[str, Any], key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ParseError(f"{where}: field {key!r} must be a string")
    return value


def _parse_node(obj: Any, position: int) -> KgNode:
    where = f"nodes[{position}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - _NODE_KEYS
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    kind_name = _require_str(obj, "kind", where)
    if kind_name not in _NODE_KINDS:
        raise ParseError(f"{where}: unknown node kind {kind_name!r}")
    attributes = obj.get("attributes", {})
    if not isinstance(attributes, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in attributes.items()
    ):
        raise ParseError(f"{where}: attributes must be a string-to-string map")
    return KgNode(
        id=_require_str(obj, "id", where),
        label=_require_str(obj, "label", where),
        kind=_NODE_KINDS[kind_name],
        attributes=dict(attributes),
    )


def _parse_edge(obj: Any, position: int) -> KgEdge:
    where = f"edges[{position}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - _EDGE_KEYS
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    kind_name = _require_str(obj, "kind", where)
    if kind_name not in _RELATION_KINDS:
        raise ParseError(f"{where}: unknown relation kind {kind_name!r}")
    provenance = obj.get("provenance", [])
    if not isinstance(provenance, list) or not all(isinstance(p, str) for p in provenance):
        raise ParseError(f"{where}: provenance must be a list of case ids")
    return KgEdge(
        id=_require_str(obj, "id", where),
        source=_require_str(obj, "source", where),
        target=_require_str(obj, "target", where),
        kind=_RELATION_KINDS[kind_name],
        provenance=list(provenance),
    )


def graph_to_document(graph: KnowledgeGraph) -> Dict[str, Any]:
    """Canonical form: nodes and edges sorted by id so output is stable."""
    nodes = [
        {"id": n.id, "label": n.label, "kind": n.kind.value, "attributes": n.attributes}
        for n in sorted(graph.nodes.values(), key=lambda n: n.id)
    ]
    edges = [
        {
            "id": e.id,
            "source": e.source,
            "target": e.target,
            "kind": e.kind.value,
            "provenance": e.provenance,
        }
        for e in sorted(graph.edges.values(), key=lambda e: e.id)
    ]
    return {"nodes": nodes, "edges": edges}


def graph_from_document(document: Dict[str, Any]) -> KnowledgeGraph:
    if not isinstance(document, dict):
        raise ParseError("graph document must be a JSON object")
    unknown = set(document) - {"nodes", "edges"}
    if unknown:
        raise ParseError(f"unknown top-level field(s) {sorted(unknown)}")
    raw_nodes = document.get("nodes")
    raw_edges = document.get("edges")
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise ParseError('graph document needs "nodes" and "edges" arrays')

    graph = KnowledgeGraph()
    seen_node_ids: set = set()
    for position, obj in enumerate(raw_nodes):
        node = _parse_node(obj, position)
        if node.id in seen_node_ids:
            raise ParseError(f"nodes[{position}]: duplicate node id {node.id!r}")
        seen_node_ids.add(node.id)
        # Insert directly; empty labels and the like are collected below.
        graph.nodes[node.id] = node
        graph._outgoing.setdefault(node.id, [])
        graph._incoming.setdefault(node.id, [])
    seen_edge_ids: set = set()
    for position, obj in enumerate(raw_edges):
        edge = _parse_edge(obj, position)
        if edge.id in seen_edge_ids:
            raise ParseError(f"edges[{position}]: duplicate edge id {edge.id!r}")
        seen_edge_ids.add(edge.id)
        graph._insert_edge_unchecked(edge)

    report = validate_graph(graph)
    if not report.ok:
        raise GraphValidationError(report)
    return graph


def dumps_graph(graph: KnowledgeGraph) -> str:
    return json.dumps(graph_to_document(graph), ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def loads_graph(text: str) -> KnowledgeGraph:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return graph_from_document(document)


def save_graph(graph: KnowledgeGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_graph(graph), encoding="utf-8")


def load_graph(path: Union[str, Path]) -> KnowledgeGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read graph file {path}: {exc}") from exc
    return loads_graph(text)
