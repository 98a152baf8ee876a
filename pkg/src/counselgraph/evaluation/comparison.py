"""Mode comparison (RAG vs KG) and model shortlisting."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, List, Optional, Sequence

from counselgraph.errors import CounselGraphError
from counselgraph.evaluation.ratings import EvalMode

# Direction per metric: bert/sbert improve upward, human ratings downward.
HIGHER_BETTER = ("bert_f1", "sbert_cos")
LOWER_BETTER = ("human_avg",)
METRICS = HIGHER_BETTER + LOWER_BETTER


class ComparisonError(CounselGraphError):
    pass


class UnmatchedModelError(ComparisonError):
    def __init__(self, missing_in_kg: "List[str]", missing_in_rag: "List[str]"):
        parts = []
        if missing_in_kg:
            parts.append(f"missing in kg: {', '.join(missing_in_kg)}")
        if missing_in_rag:
            parts.append(f"missing in rag: {', '.join(missing_in_rag)}")
        super().__init__("; ".join(parts))
        self.missing_in_kg = missing_in_kg
        self.missing_in_rag = missing_in_rag


@dataclass
class ScoreRow:
    model_id: str
    mode: str
    bert_f1: float
    sbert_cos: float
    human_avg: Optional[float] = None
    provider_name: str = ""
    family: str = ""

    def __post_init__(self) -> None:
        if self.mode not in EvalMode.ALL:
            raise ComparisonError(f"mode must be one of {EvalMode.ALL}, got {self.mode!r}")
        for name in ("bert_f1", "sbert_cos"):
            value = getattr(self, name)
            if not 0.0 <= value <= 100.0:
                raise ComparisonError(f"{name} must be in [0, 100], got {value}")


@dataclass
class ComparisonRow:
    model_id: str
    metric: str
    rag_value: float
    kg_value: float
    delta: float
    improved: bool


def _to_decimal(value: float) -> Decimal:
    return Decimal(str(value))


def exact_delta(rag_value: float, kg_value: float) -> float:
    """kg - rag via decimal arithmetic, half-up to 2 decimals."""
    delta = _to_decimal(kg_value) - _to_decimal(rag_value)
    return float(delta.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def compare_modes(rag_rows: Sequence[ScoreRow], kg_rows: Sequence[ScoreRow]) -> List[ComparisonRow]:
    """One row per (model, metric), sorted by model id then metric order.
    Models must appear in both inputs."""
    rag_by_id = {row.model_id: row for row in rag_rows}
    kg_by_id = {row.model_id: row for row in kg_rows}
    missing_in_kg = sorted(set(rag_by_id) - set(kg_by_id))
    missing_in_rag = sorted(set(kg_by_id) - set(rag_by_id))
    if missing_in_kg or missing_in_rag:
        raise UnmatchedModelError(missing_in_kg, missing_in_rag)

    rows: List[ComparisonRow] = []
    for model_id in sorted(rag_by_id):
        rag = rag_by_id[model_id]
        kg = kg_by_id[model_id]
        for metric in METRICS:
            rag_value = getattr(rag, metric)
            kg_value = getattr(kg, metric)
            if rag_value is None or kg_value is None:
                continue
            delta = exact_delta(rag_value, kg_value)
            improved = delta > 0 if metric in HIGHER_BETTER else delta < 0
            rows.append(
                ComparisonRow(
                    model_id=model_id,
                    metric=metric,
                    rag_value=rag_value,
                    kg_value=kg_value,
                    delta=delta,
                    improved=improved,
                )
            )
    return rows


@dataclass
class ShortlistCriteria:
    top_n: int = 4
    by_metric: str = "sbert_cos"

    def __post_init__(self) -> None:
        if self.top_n < 1:
            raise ComparisonError(f"top_n must be >= 1, got {self.top_n}")
        if self.by_metric not in HIGHER_BETTER:
            raise ComparisonError(
                f"by_metric must be one of {HIGHER_BETTER}, got {self.by_metric!r}"
            )


@dataclass
class Shortlist:
    best_by_metric: Dict[str, str] = field(default_factory=dict)
    top_models: List[str] = field(default_factory=list)


def shortlist(rows: Sequence[ScoreRow], criteria: Optional[ShortlistCriteria] = None) -> Shortlist:
    """Argmax model per higher-better metric, plus the top-n by one chosen
    metric. Ties break toward the lexicographically smaller model id."""
    if not rows:
        raise ComparisonError("cannot shortlist an empty row list")
    criteria = criteria or ShortlistCriteria()
    best: Dict[str, str] = {}
    for metric in HIGHER_BETTER:
        ranked = sorted(rows, key=lambda r: (-getattr(r, metric), r.model_id))
        best[metric] = ranked[0].model_id
    by = criteria.by_metric
    ordered = sorted(rows, key=lambda r: (-getattr(r, by), r.model_id))
    top = [row.model_id for row in ordered[: criteria.top_n]]
    return Shortlist(best_by_metric=best, top_models=top)
