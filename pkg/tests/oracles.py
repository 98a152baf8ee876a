"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written with a different strategy from the
production code (exhaustive enumeration, pure-Python loops) so agreement is
meaningful rather than tautological.
"""

from itertools import permutations
import math

from counselgraph.kg.query import CausalChain, KgRetrievalConfig
from counselgraph.kg.store import KnowledgeGraph, NodeKind, RelationKind

CHAIN_KINDS = (RelationKind.CAUSES, RelationKind.EXACERBATES)


def brute_force_chains(graph, seed_scores, config=None):
    """Enumerate every node permutation and keep the ones that form a chain.

    seed_scores maps node id to match score. Only Cause-kind seeded nodes may
    start a chain. Mirrors the ranking contract: relevance is the sum of seed
    scores over path nodes in path order, ties break on the node-id tuple.
    """
    config = config or KgRetrievalConfig()
    edge_kind = {}
    for edge in graph.edges.values():
        if edge.kind in CHAIN_KINDS:
            edge_kind[(edge.source, edge.target)] = edge.kind
    starts = {
        node_id
        for node_id in seed_scores
        if graph.has_node(node_id) and graph.node(node_id).kind is NodeKind.CAUSE
    }
    all_ids = sorted(graph.nodes)
    found = {}
    for length in range(2, config.max_chain_length + 2):
        if length > len(all_ids):
            break
        for combo in permutations(all_ids, length):
            if combo[0] not in starts:
                continue
            kinds = []
            for a, b in zip(combo, combo[1:]):
                kind = edge_kind.get((a, b))
                if kind is None:
                    break
                kinds.append(kind)
            else:
                relevance = 0.0
                for node_id in combo:
                    relevance += seed_scores.get(node_id, 0.0)
                found[combo] = CausalChain(combo, tuple(kinds), relevance)
    ranked = sorted(found.values(), key=lambda c: (-c.relevance, c.node_ids))
    return ranked[: config.max_chains]


def _dot(a, b):
    total = 0.0
    for x, y in zip(a, b):
        total += float(x) * float(y)
    return total


def _norm(a):
    return math.sqrt(_dot(a, a))


def slow_cosine(a, b):
    return _dot(a, b) / (_norm(a) * _norm(b))


def slow_bertscore(candidate_rows, reference_rows):
    """Precision/recall/F1 over greedy token matching, all plain loops."""
    sims = [
        [max(-1.0, min(1.0, slow_cosine(c, r))) for r in reference_rows]
        for c in candidate_rows
    ]
    precision = sum(max(row) for row in sims) / len(candidate_rows)
    recall = sum(
        max(sims[i][j] for i in range(len(candidate_rows)))
        for j in range(len(reference_rows))
    ) / len(reference_rows)
    if precision + recall == 0:
        f1 = 0.0
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return precision, recall, f1


def slow_search(query_vector, entries, query_tokens, top_k, dense_weight):
    """Rank index entries exactly as the search contract describes.

    entries: iterable of (chunk_id, vector, text). Returns ranked chunk ids.
    """
    scored = []
    for chunk_id, vector, text in entries:
        dense = max(-1.0, min(1.0, slow_cosine(query_vector, vector)))
        chunk_tokens = {t.casefold() for t in text.split() if t}
        if query_tokens:
            sparse = len(query_tokens & chunk_tokens) / len(query_tokens)
        else:
            sparse = 0.0
        if dense_weight == 1.0:
            combined = dense
        else:
            combined = dense_weight * (dense + 1.0) / 2.0 + (1.0 - dense_weight) * sparse
        scored.append((-combined, chunk_id))
    scored.sort()
    return [chunk_id for _, chunk_id in scored[:top_k]]


def check_chunk_spans(total_words, max_words, stride, spans):
    """Assert the invariants that define a correct chunking of total_words.

    spans: list of (start, end) 1-indexed inclusive.
    """
    assert spans, "at least one chunk expected"
    assert spans[0][0] == 1
    assert spans[-1][1] == total_words
    covered = set()
    for i, (start, end) in enumerate(spans):
        assert 1 <= start <= end <= total_words
        assert end - start + 1 <= max_words
        if i > 0:
            assert start == spans[i - 1][0] + stride
        if i < len(spans) - 1:
            assert end - start + 1 == max_words
        covered.update(range(start, end + 1))
    assert covered == set(range(1, total_words + 1))
    # every span except the last must stop short of the end
    for start, end in spans[:-1]:
        assert end < total_words
