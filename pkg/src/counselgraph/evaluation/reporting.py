"""Report rendering: results JSON, plain-text tables and plot-data CSVs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from counselgraph.evaluation.comparison import METRICS, ComparisonRow, ScoreRow, exact_delta
from counselgraph.evaluation.ratings import CATEGORIES, CategoryAverages, EvalMode

ABSENT = "-"


@dataclass
class ReportDocument:
    results: Dict[str, Any]
    tables: Dict[str, str] = field(default_factory=dict)
    plot_data: Dict[str, str] = field(default_factory=dict)


def _score_row_obj(row: ScoreRow) -> Dict[str, Any]:
    return {
        "model_id": row.model_id,
        "mode": row.mode,
        "bert_f1": row.bert_f1,
        "sbert_cos": row.sbert_cos,
        "human_avg": row.human_avg,
        "provider_name": row.provider_name,
        "family": row.family,
    }


def _comparison_row_obj(row: ComparisonRow) -> Dict[str, Any]:
    return {
        "model_id": row.model_id,
        "metric": row.metric,
        "rag_value": row.rag_value,
        "kg_value": row.kg_value,
        "delta": row.delta,
        "improved": row.improved,
    }


def _pad(value: str, width: int) -> str:
    return value.ljust(width)


def _scores_table(rows: Sequence[ScoreRow]) -> str:
    width = max([len("Model")] + [len(r.model_id) for r in rows]) + 2
    lines = [
        _pad("Model", width) + "BERT F1   SBERT   Human",
    ]
    for row in sorted(rows, key=lambda r: r.model_id):
        human = f"{row.human_avg:.1f}" if row.human_avg is not None else ABSENT
        lines.append(
            _pad(row.model_id, width)
            + f"{row.bert_f1:7.2f} {row.sbert_cos:7.2f}   {human}"
        )
    return "\n".join(lines) + "\n"


def _comparison_table(comparisons: Sequence[ComparisonRow]) -> str:
    if not comparisons:
        return "no comparison rows\n"
    width = max([len("Model")] + [len(r.model_id) for r in comparisons]) + 2
    lines = [
        _pad("Model", width) + "Metric      RAG     KG      Delta   Improved",
    ]
    for row in comparisons:
        lines.append(
            _pad(row.model_id, width)
            + f"{row.metric:<10}"
            + f"{row.rag_value:7.2f} {row.kg_value:7.2f}  {row.delta:+7.2f}   "
            + ("yes" if row.improved else "no")
        )
    return "\n".join(lines) + "\n"


def _categories_table(aggregates: Sequence[CategoryAverages]) -> str:
    if not aggregates:
        return "no human ratings\n"
    by_model: Dict[str, Dict[str, CategoryAverages]] = {}
    for aggregate in aggregates:
        by_model.setdefault(aggregate.model_id, {})[aggregate.mode] = aggregate
    width = max(len(c) for c in CATEGORIES) + 2
    blocks: List[str] = []
    for model_id in sorted(by_model):
        modes = by_model[model_id]
        rag = modes.get(EvalMode.RAG)
        kg = modes.get(EvalMode.KG)
        lines = [model_id, _pad("Category", width) + "RAG   KG    Delta"]
        for category in CATEGORIES:
            rag_value = rag.by_category.get(category) if rag else None
            kg_value = kg.by_category.get(category) if kg else None
            rag_text = f"{rag_value:.1f}" if rag_value is not None else ABSENT
            kg_text = f"{kg_value:.1f}" if kg_value is not None else ABSENT
            if rag_value is not None and kg_value is not None:
                delta_text = f"{exact_delta(rag_value, kg_value):+.2f}"
            else:
                delta_text = ABSENT
            lines.append(_pad(category, width) + f"{rag_text:<6}{kg_text:<6}{delta_text}")
        overall_rag = f"{rag.overall:.1f}" if rag else ABSENT
        overall_kg = f"{kg.overall:.1f}" if kg else ABSENT
        lines.append(_pad("Overall", width) + f"{overall_rag:<6}{overall_kg:<6}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _scatter_csv(rows: Sequence[ScoreRow]) -> str:
    lines = ["model_id,sbert_cos,bert_f1"]
    for row in sorted(rows, key=lambda r: r.model_id):
        lines.append(f"{row.model_id},{row.sbert_cos},{row.bert_f1}")
    return "\n".join(lines) + "\n"


def _paired_csv(comparisons: Sequence[ComparisonRow]) -> str:
    lines = ["model_id,metric,rag_value,kg_value,delta"]
    for row in comparisons:
        lines.append(
            f"{row.model_id},{row.metric},{row.rag_value},{row.kg_value},{row.delta}"
        )
    return "\n".join(lines) + "\n"


def render_report(
    rows: Sequence[ScoreRow],
    comparisons: Sequence[ComparisonRow],
    aggregates: Sequence[CategoryAverages] = (),
    meta: Optional[Dict[str, Any]] = None,
) -> ReportDocument:
    """Assemble the full report. Empty ratings leave the human columns
    absent; nothing crashes."""
    if meta is None:
        provider = rows[0].provider_name if rows else ""
        meta = {"provider": provider, "template_version": "v1"}
    results = {
        "rows": [_score_row_obj(r) for r in sorted(rows, key=lambda r: (r.model_id, r.mode))],
        "comparisons": [_comparison_row_obj(c) for c in comparisons],
        "meta": dict(meta),
    }
    return ReportDocument(
        results=results,
        tables={
            "scores": _scores_table(rows),
            "comparison": _comparison_table(comparisons),
            "categories": _categories_table(aggregates),
        },
        plot_data={
            "scatter": _scatter_csv(rows),
            "paired": _paired_csv(comparisons),
        },
    )


def write_report(document: ReportDocument, out_dir: Union[str, Path]) -> List[Path]:
    """Write results.json, the text tables and the CSVs; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    results_path = out / "results.json"
    results_path.write_text(
        json.dumps(document.results, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    written.append(results_path)

    for name, text in document.tables.items():
        path = out / f"{name}.txt"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    for name, text in document.plot_data.items():
        path = out / f"{name}.csv"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
