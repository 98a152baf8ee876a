"""Post-hoc graph validation: reports violations as data instead of raising.

Used by the loader to reject malformed files with a full finding list, and by
tests to confirm that graphs built through the checked API stay clean.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List

from counselgraph.kg.store import KnowledgeGraph, endpoint_rule_allows

MISSING_ENDPOINT = "missing-endpoint"
KIND_VIOLATION = "kind-violation"
DUPLICATE_TRIPLE = "duplicate-triple"
EMPTY_LABEL = "empty-label"


@dataclass(frozen=True)
class Violation:
    code: str
    subject_id: str  # node or edge id
    message: str


@dataclass
class ValidationReport:
    violations: List[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "graph is well-formed"
        lines = [f"{len(self.violations)} violation(s):"]
        lines.extend(f"  [{v.code}] {v.subject_id}: {v.message}" for v in self.violations)
        return "\n".join(lines)


def validate_graph(graph: KnowledgeGraph) -> ValidationReport:
    violations: List[Violation] = []

    for node in graph.nodes.values():
        if not node.label or not node.label.strip():
            violations.append(Violation(EMPTY_LABEL, node.id, "node label is blank"))

    triple_counts = Counter((e.source, e.target, e.kind) for e in graph.edges.values())

    for edge in sorted(graph.edges.values(), key=lambda e: e.id):
        dangling = False
        for endpoint, role in ((edge.source, "source"), (edge.target, "target")):
            if endpoint not in graph.nodes:
                violations.append(
                    Violation(MISSING_ENDPOINT, edge.id, f"{role} node {endpoint!r} does not exist")
                )
                dangling = True
        if dangling:
            continue
        source_kind = graph.nodes[edge.source].kind
        target_kind = graph.nodes[edge.target].kind
        if not endpoint_rule_allows(edge.kind, source_kind, target_kind):
            violations.append(
                Violation(
                    KIND_VIOLATION,
                    edge.id,
                    f"{edge.kind.value} does not allow {source_kind.value} -> {target_kind.value}",
                )
            )

    for (source, target, kind), count in sorted(triple_counts.items(), key=lambda kv: kv[0][:2]):
        if count > 1:
            violations.append(
                Violation(
                    DUPLICATE_TRIPLE,
                    source,
                    f"{count} parallel edges {source!r} -{kind.value}-> {target!r}",
                )
            )

    return ValidationReport(violations)
