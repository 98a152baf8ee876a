"""Graph JSON round-trips and parse failure modes."""

import pytest

from counselgraph.kg.fixture import generate_reference_graph
from counselgraph.kg.serialization import (
    GraphValidationError,
    ParseError,
    dumps_graph,
    graph_from_document,
    graph_to_document,
    load_graph,
    loads_graph,
    save_graph,
)
from counselgraph.kg.store import KgEdge, KgNode, KnowledgeGraph, NodeKind, RelationKind


@pytest.fixture
def tiny_graph():
    g = KnowledgeGraph()
    g.add_node(KgNode("c1", "debt", NodeKind.CAUSE, attributes={"poverty_driver": "true"}))
    g.add_node(KgNode("e1", "worry", NodeKind.EFFECT))
    g.add_edge(KgEdge("x1", "c1", "e1", RelationKind.CAUSES, provenance=["case-001"]))
    return g


def test_round_trip_preserves_everything(tiny_graph):
    restored = loads_graph(dumps_graph(tiny_graph))
    assert restored.node_count == 2
    assert restored.edge_count == 1
    assert restored.node("c1").attributes == {"poverty_driver": "true"}
    assert restored.edges["x1"].provenance == ["case-001"]
    assert restored.edges["x1"].kind is RelationKind.CAUSES


def test_document_ordering_is_canonical(tiny_graph):
    doc = graph_to_document(tiny_graph)
    assert [n["id"] for n in doc["nodes"]] == sorted(n["id"] for n in doc["nodes"])
    assert [e["id"] for e in doc["edges"]] == sorted(e["id"] for e in doc["edges"])


def test_dumps_is_deterministic(tiny_graph):
    assert dumps_graph(tiny_graph) == dumps_graph(tiny_graph)


def test_reference_fixture_round_trips_exactly():
    graph = generate_reference_graph()
    restored = loads_graph(dumps_graph(graph))
    assert dumps_graph(restored) == dumps_graph(graph)


def test_file_round_trip(tiny_graph, tmp_path):
    path = tmp_path / "graph.json"
    save_graph(tiny_graph, path)
    restored = load_graph(path)
    assert restored.node_count == tiny_graph.node_count


def test_invalid_json_raises_parse_error():
    with pytest.raises(ParseError):
        loads_graph("{nope")


@pytest.mark.parametrize(
    "doc",
    [
        {"edges": []},  # nodes missing
        {"nodes": [], "edges": [], "extra": 1},
        {"nodes": [{"id": "a"}], "edges": []},  # node fields missing
        {"nodes": [{"id": "a", "label": "x", "kind": "NotAKind"}], "edges": []},
    ],
)
def test_malformed_documents_raise_parse_error(doc):
    with pytest.raises(ParseError):
        graph_from_document(doc)


def test_duplicate_node_id_in_document_raises():
    doc = {
        "nodes": [
            {"id": "a", "label": "x", "kind": "Cause"},
            {"id": "a", "label": "y", "kind": "Cause"},
        ],
        "edges": [],
    }
    with pytest.raises(ParseError):
        graph_from_document(doc)


def test_semantic_violations_raise_validation_error():
    doc = {
        "nodes": [
            {"id": "e1", "label": "worry", "kind": "Effect"},
            {"id": "c1", "label": "debt", "kind": "Cause"},
        ],
        "edges": [{"id": "x1", "source": "e1", "target": "c1", "kind": "CAUSES"}],
    }
    with pytest.raises(GraphValidationError) as excinfo:
        graph_from_document(doc)
    assert not excinfo.value.report.ok
