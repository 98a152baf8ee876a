"""Deterministic synthetic knowledge graph matching the published per-kind edge
distribution (368/184/92/92/23/20/20/14/9) over 308 nodes.

The real clinical graph is private. This generator lays down a small
hand-wired motif set (so traversal demos hit recognizable chains such as
"job loss -> economic hardship -> sleep loss -> perceived spiritual
affliction") and then fills the remaining per-kind budgets with seeded random
edges, so statistics and traversal behavior are reproducible run to run.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Tuple

from counselgraph.kg.store import (
    ENDPOINT_RULES,
    KgEdge,
    KgNode,
    KnowledgeGraph,
    NodeKind,
    RelationKind,
)

DEFAULT_SEED = 20

REFERENCE_EDGE_COUNTS: Dict[RelationKind, int] = {
    RelationKind.MITIGATES: 368,
    RelationKind.LEADS_TO: 184,
    RelationKind.CAUSES: 92,
    RelationKind.ADDRESSES: 92,
    RelationKind.BELONGS_TO: 23,
    RelationKind.COMPLEMENTS: 20,
    RelationKind.RELATED_TO: 20,
    RelationKind.EXACERBATES: 14,
    RelationKind.REQUIRES: 9,
}

REFERENCE_NODE_COUNTS: Dict[NodeKind, int] = {
    NodeKind.CAUSE: 70,
    NodeKind.EFFECT: 84,
    NodeKind.INTERVENTION: 96,
    NodeKind.OUTCOME: 38,
    NodeKind.CATEGORY: 20,
}

_ID_PREFIX = {
    NodeKind.CAUSE: "cause",
    NodeKind.EFFECT: "effect",
    NodeKind.INTERVENTION: "intervention",
    NodeKind.OUTCOME: "outcome",
    NodeKind.CATEGORY: "category",
}

# Poverty-driver causes come first so the flag lines up with ids cause-001..
_POVERTY_DRIVER_CAUSES = [
    "economic hardship",
    "job loss",
    "debt burden",
    "food insecurity",
    "housing insecurity",
    "irregular income",
    "loan repayment pressure",
    "dowry demand pressure",
]

_OTHER_CAUSES = [
    "sleep problems",
    "sleep loss",
    "marital conflict",
    "domestic violence exposure",
    "social isolation",
    "chronic illness in family",
    "death of a relative",
    "migration of spouse",
    "child school dropout",
    "neighborhood dispute",
    "in-law conflict",
    "workplace harassment",
    "untreated physical pain",
    "substance use in family",
    "forced early marriage",
    "land dispute",
]

_EFFECTS = [
    "perceived spiritual affliction",
    "persistent worry",
    "low mood",
    "loss of appetite",
    "crying spells",
    "hopelessness",
    "irritability",
    "withdrawal from neighbors",
    "chest tightness",
    "headache episodes",
    "restlessness at night",
    "fear of the future",
    "difficulty concentrating",
    "shame before relatives",
    "loss of interest in work",
    "palpitations",
]

_INTERVENTIONS = [
    "budgeting guidance",
    "savings plan discussion",
    "income support referral",
    "activity scheduling",
    "sleep routine planning",
    "breathing exercise practice",
    "supportive listening",
    "family mediation session",
    "faith-sensitive counseling",
    "problem prioritization exercise",
    "activity log review",
    "referral to tele-mental health",
    "community group linkage",
    "psychoeducation on stress",
    "safety planning discussion",
    "gratitude practice",
    "mobility support referral",
    "legal aid referral",
]

_OUTCOMES = [
    "improved sleep",
    "reduced worry",
    "resumed daily activities",
    "strengthened family support",
    "regular savings habit",
    "renewed income activity",
    "calmer household",
    "improved appetite",
    "more social contact",
    "coping toolbox in use",
]

_CATEGORIES = [
    "financial stressors",
    "family stressors",
    "health stressors",
    "emotional responses",
    "somatic complaints",
    "behavioral activation supports",
    "financial supports",
    "relational supports",
    "referral pathways",
    "recovery outcomes",
]

# Public label pools, shared with the corpus fixture so narratives and graph
# nodes speak the same vocabulary.
CAUSE_LABELS = tuple(_POVERTY_DRIVER_CAUSES + _OTHER_CAUSES)
POVERTY_DRIVER_LABELS = tuple(_POVERTY_DRIVER_CAUSES)
EFFECT_LABELS = tuple(_EFFECTS)
INTERVENTION_LABELS = tuple(_INTERVENTIONS)
OUTCOME_LABELS = tuple(_OUTCOMES)
CATEGORY_LABELS = tuple(_CATEGORIES)

# (relation, source label, target label): seeded before random fill.
_MOTIF_EDGES: List[Tuple[RelationKind, str, str]] = [
    (RelationKind.EXACERBATES, "job loss", "economic hardship"),
    (RelationKind.EXACERBATES, "economic hardship", "debt burden"),
    (RelationKind.EXACERBATES, "economic hardship", "sleep loss"),
    (RelationKind.EXACERBATES, "debt burden", "sleep problems"),
    (RelationKind.EXACERBATES, "marital conflict", "social isolation"),
    (RelationKind.CAUSES, "sleep loss", "perceived spiritual affliction"),
    (RelationKind.CAUSES, "sleep problems", "low mood"),
    (RelationKind.CAUSES, "economic hardship", "persistent worry"),
    (RelationKind.CAUSES, "job loss", "hopelessness"),
    (RelationKind.CAUSES, "marital conflict", "crying spells"),
    (RelationKind.ADDRESSES, "income support referral", "job loss"),
    (RelationKind.ADDRESSES, "budgeting guidance", "economic hardship"),
    (RelationKind.ADDRESSES, "savings plan discussion", "debt burden"),
    (RelationKind.ADDRESSES, "sleep routine planning", "sleep problems"),
    (RelationKind.ADDRESSES, "family mediation session", "marital conflict"),
    (RelationKind.MITIGATES, "breathing exercise practice", "persistent worry"),
    (RelationKind.MITIGATES, "activity scheduling", "low mood"),
    (RelationKind.MITIGATES, "supportive listening", "crying spells"),
    (RelationKind.MITIGATES, "faith-sensitive counseling", "perceived spiritual affliction"),
    (RelationKind.MITIGATES, "sleep routine planning", "restlessness at night"),
    (RelationKind.LEADS_TO, "sleep routine planning", "improved sleep"),
    (RelationKind.LEADS_TO, "activity scheduling", "resumed daily activities"),
    (RelationKind.LEADS_TO, "budgeting guidance", "regular savings habit"),
    (RelationKind.LEADS_TO, "income support referral", "renewed income activity"),
    (RelationKind.COMPLEMENTS, "activity scheduling", "sleep routine planning"),
    (RelationKind.COMPLEMENTS, "budgeting guidance", "savings plan discussion"),
    (RelationKind.REQUIRES, "income support referral", "budgeting guidance"),
    (RelationKind.BELONGS_TO, "economic hardship", "financial stressors"),
    (RelationKind.BELONGS_TO, "job loss", "financial stressors"),
    (RelationKind.BELONGS_TO, "marital conflict", "family stressors"),
    (RelationKind.BELONGS_TO, "low mood", "emotional responses"),
    (RelationKind.BELONGS_TO, "activity scheduling", "behavioral activation supports"),
]


def _expand_labels(base: Sequence[str], count: int) -> List[str]:
    labels = []
    for i in range(count):
        stem = base[i % len(base)]
        repeat = i // len(base)
        labels.append(stem if repeat == 0 else f"{stem} {repeat + 1}")
    return labels


def generate_reference_graph(seed: int = DEFAULT_SEED) -> KnowledgeGraph:
    """Build the bundled reference graph: 308 nodes, per-kind edge counts as
    in REFERENCE_EDGE_COUNTS (822 edges in total)."""
    rng = random.Random(seed)
    graph = KnowledgeGraph()

    cause_labels = _expand_labels(
        _POVERTY_DRIVER_CAUSES + _OTHER_CAUSES, REFERENCE_NODE_COUNTS[NodeKind.CAUSE]
    )
    base_pools = {
        NodeKind.CAUSE: cause_labels,
        NodeKind.EFFECT: _expand_labels(_EFFECTS, REFERENCE_NODE_COUNTS[NodeKind.EFFECT]),
        NodeKind.INTERVENTION: _expand_labels(
            _INTERVENTIONS, REFERENCE_NODE_COUNTS[NodeKind.INTERVENTION]
        ),
        NodeKind.OUTCOME: _expand_labels(_OUTCOMES, REFERENCE_NODE_COUNTS[NodeKind.OUTCOME]),
        NodeKind.CATEGORY: _expand_labels(_CATEGORIES, REFERENCE_NODE_COUNTS[NodeKind.CATEGORY]),
    }

    label_to_id: Dict[str, str] = {}
    ids_by_kind: Dict[NodeKind, List[str]] = {}
    for kind in NodeKind:
        ids = []
        for i, label in enumerate(base_pools[kind], start=1):
            node_id = f"{_ID_PREFIX[kind]}-{i:03d}"
            attributes = {}
            if kind is NodeKind.CAUSE and any(
                label == d or label.startswith(d + " ") for d in _POVERTY_DRIVER_CAUSES
            ):
                attributes["poverty_driver"] = "true"
            graph.add_node(KgNode(id=node_id, label=label, kind=kind, attributes=attributes))
            label_to_id[label] = node_id
            ids.append(node_id)
        ids_by_kind[kind] = ids

    case_ids = [f"case-{i:03d}" for i in range(1, 70)]
    counters = {kind: 0 for kind in RelationKind}

    def add(kind: RelationKind, source_id: str, target_id: str) -> None:
        counters[kind] += 1
        provenance = []
        if rng.random() < 0.5:
            provenance = sorted(rng.sample(case_ids, rng.randint(1, 2)))
        graph.add_edge(
            KgEdge(
                id=f"{kind.value.lower()}-{counters[kind]:03d}",
                source=source_id,
                target=target_id,
                kind=kind,
                provenance=provenance,
            )
        )

    for kind, source_label, target_label in _MOTIF_EDGES:
        add(kind, label_to_id[source_label], label_to_id[target_label])

    all_ids = sorted(graph.nodes)
    for kind in RelationKind:
        sources_rule, targets_rule = ENDPOINT_RULES[kind]
        source_pool = all_ids if kind is RelationKind.RELATED_TO else [
            i for k in sorted(sources_rule, key=lambda k: k.value) for i in ids_by_kind[k]
        ]
        target_pool = all_ids if kind is RelationKind.RELATED_TO else [
            i for k in sorted(targets_rule, key=lambda k: k.value) for i in ids_by_kind[k]
        ]
        while counters[kind] < REFERENCE_EDGE_COUNTS[kind]:
            source_id = source_pool[rng.randrange(len(source_pool))]
            target_id = target_pool[rng.randrange(len(target_pool))]
            if source_id == target_id or graph.has_triple(source_id, target_id, kind):
                continue
            add(kind, source_id, target_id)

    return graph
