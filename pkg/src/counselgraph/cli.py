"""Command-line front door.

Exit codes: 0 success, 1 operational failure, 2 usage error (argparse).
Read commands accept --format json for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from counselgraph.corpus.chunking import chunk_cases
from counselgraph.corpus.fixture import generate_reference_corpus
from counselgraph.corpus.records import cases_to_jsonl, ingest_file, write_cases
from counselgraph.corpus.stats import summarize_demographics
from counselgraph.corpus.validation import validate_cases
from counselgraph.errors import CounselGraphError
from counselgraph.evaluation.metrics import (
    TokenEmbeddingMatrix,
    bertscore_f1,
    sentence_cosine,
)
from counselgraph.evaluation.ratings import aggregate_ratings, load_ratings_jsonl
from counselgraph.evaluation.comparison import compare_modes
from counselgraph.evaluation.reference import (
    reference_mode_rows,
    reference_score_rows,
)
from counselgraph.evaluation.reporting import render_report, write_report
from counselgraph.generation.context import GroundingMode
from counselgraph.generation.pipeline import draft_to_obj
from counselgraph.kg.fixture import generate_reference_graph
from counselgraph.kg.serialization import load_graph, save_graph
from counselgraph.kg.store import graph_stats
from counselgraph.kg.validation import validate_graph
from counselgraph.retrieval.index import build_index, save_index
from counselgraph.retrieval.providers import HashEmbeddingProvider
from counselgraph.service.config import EngineConfig, load_config
from counselgraph.service.engine import Engine

MODE_NAMES = {"rag": GroundingMode.RAG_ONLY, "kg": GroundingMode.KG_GROUNDED}


def _print(payload: Dict[str, Any], as_json: bool, text_lines: List[str]) -> None:
    if as_json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        for line in text_lines:
            print(line)


# ingest ----------------------------------------------------------------


def cmd_ingest(args: argparse.Namespace) -> int:
    result = ingest_file(args.corpus, lenient=args.lenient, strict_sessions=args.strict_sessions)
    reports = validate_cases(result.records)
    flagged = [r for r in reports if not r.ok]
    summary = summarize_demographics(result.records)
    payload = {
        "records": len(result.records),
        "skipped": len(result.diagnostics),
        "diagnostics": [
            {"line": d.line_no, "case_id": d.case_id, "message": d.message}
            for d in result.diagnostics
        ],
        "lint": {
            "flagged_cases": len(flagged),
            "completeness_issues": sum(len(r.completeness) for r in reports),
            "redaction_hits": sum(len(r.redaction) for r in reports),
        },
        "demographics": {
            "total": summary.total,
            "literacy": summary.literacy,
            "sex": summary.sex,
        },
    }
    lines = [
        f"ingested {payload['records']} records ({payload['skipped']} skipped)",
        f"lint: {payload['lint']['flagged_cases']} flagged cases, "
        f"{payload['lint']['completeness_issues']} completeness issues, "
        f"{payload['lint']['redaction_hits']} redaction hits",
    ]
    for report in flagged:
        for issue in report.completeness:
            lines.append(f"  {report.case_id}: {issue.message}")
        for hit in report.redaction:
            lines.append(f"  {report.case_id} s{hit.session_index}: {hit.kind} {hit.span!r}")
    _print(payload, args.format == "json", lines)
    return 0


# chunk -----------------------------------------------------------------


def cmd_chunk(args: argparse.Namespace) -> int:
    result = ingest_file(args.corpus)
    chunks = chunk_cases(result.records, max_words=args.max_words, stride=args.stride)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            for chunk in chunks:
                handle.write(
                    json.dumps(
                        {
                            "id": chunk.id,
                            "case_id": chunk.case_id,
                            "session_index": chunk.session_index,
                            "seq": chunk.seq,
                            "start_word": chunk.start_word,
                            "end_word": chunk.end_word,
                            "text": chunk.text,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    payload = {"chunks": len(chunks), "records": len(result.records)}
    _print(payload, args.format == "json", [f"{len(chunks)} chunks from {len(result.records)} records"])
    return 0


# build-index -----------------------------------------------------------


def cmd_build_index(args: argparse.Namespace) -> int:
    result = ingest_file(args.corpus)
    chunks = chunk_cases(result.records, max_words=args.max_words, stride=args.stride)
    provider = HashEmbeddingProvider(dim=args.dim)
    index, stats = build_index(chunks, provider)
    save_index(index, args.out)
    payload = {
        "entries": stats.chunk_count,
        "batches": stats.batch_count,
        "dim": stats.dim,
        "out": str(args.out),
    }
    _print(
        payload,
        args.format == "json",
        [f"indexed {stats.chunk_count} chunks (dim {stats.dim}) -> {args.out}"],
    )
    return 0


# graph -----------------------------------------------------------------


def cmd_graph_validate(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    report = validate_graph(graph)
    payload = {
        "ok": report.ok,
        "violations": [
            {"code": v.code, "subject_id": v.subject_id, "message": v.message}
            for v in report.violations
        ],
    }
    lines = [report.summary()]
    _print(payload, args.format == "json", lines)
    return 0 if report.ok else 1


def cmd_graph_stats(args: argparse.Namespace) -> int:
    if args.fixture:
        graph = generate_reference_graph(seed=args.seed)
    else:
        if not args.graph:
            print("error: provide a graph file or --fixture", file=sys.stderr)
            return 2
        graph = load_graph(args.graph)
    stats = graph_stats(graph)
    payload = {
        "node_count": stats.node_count,
        "edge_count": stats.edge_count,
        "nodes_by_kind": {k.value: v for k, v in stats.nodes_by_kind.items()},
        "edges_by_kind": {k.value: v for k, v in stats.edges_by_kind.items()},
    }
    lines = [f"nodes: {stats.node_count}", f"edges: {stats.edge_count}"]
    for kind, count in sorted(stats.edges_by_kind.items(), key=lambda kv: (-kv[1], kv[0].value)):
        lines.append(f"  {kind.value}: {count}")
    _print(payload, args.format == "json", lines)
    return 0


def cmd_graph_fixture(args: argparse.Namespace) -> int:
    graph = generate_reference_graph(seed=args.seed)
    save_graph(graph, args.out)
    print(f"wrote reference graph ({graph.node_count} nodes, {graph.edge_count} edges) -> {args.out}")
    return 0


# corpus ----------------------------------------------------------------


def cmd_corpus_fixture(args: argparse.Namespace) -> int:
    records = generate_reference_corpus(seed=args.seed)
    write_cases(records, args.out)
    print(f"wrote reference corpus ({len(records)} records) -> {args.out}")
    return 0


# query -----------------------------------------------------------------


def _engine_from_args(args: argparse.Namespace) -> Engine:
    if args.config:
        config = load_config(args.config)
    else:
        config = EngineConfig()
    if getattr(args, "graph", None):
        config.graph_path = args.graph
    if getattr(args, "corpus", None):
        config.corpus_path = args.corpus
    if getattr(args, "index", None):
        config.index_path = args.index
    return Engine(config)


def cmd_query(args: argparse.Namespace) -> int:
    engine = _engine_from_args(args)
    draft, context = engine.query(args.text, MODE_NAMES[args.mode])

    from counselgraph.service.app import _context_obj

    context_obj = _context_obj(engine, context)
    draft_obj = draft_to_obj(draft)
    # volatile fields stay out of the written artifacts
    stable_draft = {
        k: v
        for k, v in draft_obj.items()
        if k not in ("created_at", "model_latency_ms")
    }
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "draft.txt").write_text(draft.text + "\n", encoding="utf-8")
        (out / "context.json").write_text(
            json.dumps(
                {"draft": stable_draft, "context": context_obj},
                ensure_ascii=False,
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )
    payload = {"draft": stable_draft, "context": context_obj}
    _print(payload, args.format == "json", [draft.text])
    return 0


# eval ------------------------------------------------------------------


def _matrix(provider: HashEmbeddingProvider, text: str) -> TokenEmbeddingMatrix:
    tokens = text.split()
    import numpy as np

    return TokenEmbeddingMatrix(np.vstack(provider.embed(tokens)))


def cmd_eval_run(args: argparse.Namespace) -> int:
    provider = HashEmbeddingProvider(dim=args.dim)
    rows: List[Dict[str, Any]] = []
    with open(args.pairs, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            candidate = obj["candidate"]
            reference = obj["reference"]
            score = bertscore_f1(_matrix(provider, candidate), _matrix(provider, reference))
            cos = sentence_cosine(
                provider.embed([candidate])[0], provider.embed([reference])[0]
            )
            rows.append(
                {
                    "id": obj.get("id", f"pair-{line_no}"),
                    "bert_p": round(score.precision * 100.0, 2),
                    "bert_r": round(score.recall * 100.0, 2),
                    "bert_f1": round(score.f1 * 100.0, 2),
                    "sbert_cos": round(cos, 2),
                }
            )
    if not rows:
        print("error: no pairs found", file=sys.stderr)
        return 1
    mean_f1 = round(sum(r["bert_f1"] for r in rows) / len(rows), 2)
    mean_cos = round(sum(r["sbert_cos"] for r in rows) / len(rows), 2)
    payload = {"pairs": rows, "mean_bert_f1": mean_f1, "mean_sbert_cos": mean_cos}
    lines = [f"{r['id']}: bert_f1 {r['bert_f1']} sbert {r['sbert_cos']}" for r in rows]
    lines.append(f"means: bert_f1 {mean_f1} sbert {mean_cos}")
    _print(payload, args.format == "json", lines)
    return 0


def cmd_eval_aggregate(args: argparse.Namespace) -> int:
    with open(args.ratings, "r", encoding="utf-8") as handle:
        ratings = load_ratings_jsonl(handle)
    aggregates = aggregate_ratings(ratings, allow_missing=args.allow_missing)
    payload = {
        "aggregates": [
            {
                "model_id": a.model_id,
                "mode": a.mode,
                "by_category": a.by_category,
                "overall": a.overall,
            }
            for a in aggregates
        ]
    }
    lines = [
        f"{a.model_id} [{a.mode}] overall {a.overall:.1f} "
        + " ".join(f"{c}={v:.1f}" for c, v in a.by_category.items())
        for a in aggregates
    ]
    _print(payload, args.format == "json", lines)
    return 0


# report ----------------------------------------------------------------


def cmd_report(args: argparse.Namespace) -> int:
    rows = list(reference_score_rows())
    rag_rows, kg_rows = reference_mode_rows()
    comparisons = compare_modes(rag_rows, kg_rows)
    aggregates = []
    if args.ratings:
        with open(args.ratings, "r", encoding="utf-8") as handle:
            ratings = load_ratings_jsonl(handle)
        aggregates = aggregate_ratings(ratings, allow_missing=True)
    document = render_report(rows + rag_rows + kg_rows, comparisons, aggregates)
    written = write_report(document, args.out_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


# serve -----------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from counselgraph.service.app import create_app

    engine = _engine_from_args(args)
    app = create_app(engine)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="counselgraph",
        description="Knowledge-graph-grounded counseling support engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and lint a case corpus")
    p.add_argument("corpus")
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--strict-sessions", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("chunk", help="chunk session narratives")
    p.add_argument("corpus")
    p.add_argument("--max-words", type=int, default=500)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("build-index", help="embed chunks and write the index")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--max-words", type=int, default=500)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_build_index)

    graph = sub.add_parser("graph", help="graph operations")
    graph_sub = graph.add_subparsers(dest="graph_command", required=True)

    p = graph_sub.add_parser("validate", help="validate a graph file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_graph_validate)

    p = graph_sub.add_parser("stats", help="node and edge counts by kind")
    p.add_argument("graph", nargs="?", default=None)
    p.add_argument("--fixture", action="store_true")
    p.add_argument("--seed", type=int, default=20)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_graph_stats)

    p = graph_sub.add_parser("generate-fixture", help="write the reference graph")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=20)
    p.set_defaults(func=cmd_graph_fixture)

    corpus = sub.add_parser("corpus", help="corpus operations")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True)

    p = corpus_sub.add_parser("generate-fixture", help="write the reference corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=20)
    p.set_defaults(func=cmd_corpus_fixture)

    p = sub.add_parser("query", help="run one query through a pipeline")
    p.add_argument("text")
    p.add_argument("--mode", choices=("rag", "kg"), default="rag")
    p.add_argument("--config", default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--corpus", default=None)
    p.add_argument("--index", default=None)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_query)

    ev = sub.add_parser("eval", help="evaluation operations")
    ev_sub = ev.add_subparsers(dest="eval_command", required=True)

    p = ev_sub.add_parser("run", help="batch metrics over candidate/reference pairs")
    p.add_argument("pairs")
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval_run)

    p = ev_sub.add_parser("aggregate", help="aggregate a ratings file")
    p.add_argument("ratings")
    p.add_argument("--allow-missing", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval_aggregate)

    p = sub.add_parser("report", help="write result tables and plot data")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--ratings", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--corpus", default=None)
    p.add_argument("--index", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CounselGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
