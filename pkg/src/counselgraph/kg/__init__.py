from counselgraph.kg.store import (
    ENDPOINT_RULES,
    DuplicateEdgeError,
    DuplicateIdError,
    EmptyLabelError,
    GraphError,
    KgEdge,
    KgNode,
    KindViolationError,
    KnowledgeGraph,
    MissingEndpointError,
    NodeKind,
    RelationKind,
    StatsReport,
    endpoint_rule_allows,
    graph_stats,
)
from counselgraph.kg.validation import ValidationReport, Violation, validate_graph
from counselgraph.kg.serialization import (
    GraphValidationError,
    ParseError,
    dumps_graph,
    load_graph,
    loads_graph,
    save_graph,
)
from counselgraph.kg.fixture import (
    REFERENCE_EDGE_COUNTS,
    REFERENCE_NODE_COUNTS,
    generate_reference_graph,
)
from counselgraph.kg.query import (
    BENEFICIAL_RELATIONS,
    CHAIN_RELATIONS,
    CausalChain,
    ConfigError,
    EmptyQueryError,
    InterventionSuggestion,
    KgRetrievalConfig,
    NodeMatch,
    find_causal_chains,
    find_interventions_for,
    general_effective_interventions,
    match_nodes,
    tokenize,
)
