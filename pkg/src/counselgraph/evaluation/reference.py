"""Published reference results, shipped as package data.

Three files: the 17-model automated screening, the RAG vs KG comparison for
the four shortlisted models, and their category-level human means. Half-point
human means are reconstructed as two integer raters (floor and ceil), which
is the minimal rater set consistent with an integer Likert scale.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Dict, List, Tuple

from counselgraph.evaluation.comparison import ScoreRow
from counselgraph.evaluation.ratings import CATEGORIES, EvalMode, HumanRating

REFERENCE_PROVIDER = "reported"
SYNTH_RATER_IDS = ("rater-a", "rater-b")


def _load(name: str) -> dict:
    text = (
        resources.files("counselgraph.evaluation")
        .joinpath("data", name)
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


def reference_score_rows() -> List[ScoreRow]:
    """The automated screening table: 17 models, RAG mode."""
    doc = _load("automated_scores.json")
    return [
        ScoreRow(
            model_id=row["model_id"],
            mode=EvalMode.RAG,
            bert_f1=row["bert_f1"],
            sbert_cos=row["sbert_cos"],
            provider_name=doc["provider"],
            family=row["family"],
        )
        for row in doc["rows"]
    ]


def reference_mode_rows() -> "Tuple[List[ScoreRow], List[ScoreRow]]":
    """(rag_rows, kg_rows) for the four shortlisted models, human averages
    included."""
    doc = _load("mode_comparison.json")
    rag_rows: List[ScoreRow] = []
    kg_rows: List[ScoreRow] = []
    for model in doc["models"]:
        common = {"provider_name": doc["provider"], "family": model["family"]}
        rag_rows.append(
            ScoreRow(
                model_id=model["model_id"],
                mode=EvalMode.RAG,
                bert_f1=model["bert_f1"]["rag"],
                sbert_cos=model["sbert_cos"]["rag"],
                human_avg=model["human_avg"]["rag"],
                **common,
            )
        )
        kg_rows.append(
            ScoreRow(
                model_id=model["model_id"],
                mode=EvalMode.KG,
                bert_f1=model["bert_f1"]["kg"],
                sbert_cos=model["sbert_cos"]["kg"],
                human_avg=model["human_avg"]["kg"],
                **common,
            )
        )
    return rag_rows, kg_rows


def reference_category_means() -> Dict[str, Dict[str, Dict[str, float]]]:
    """model_id -> mode -> category -> mean."""
    doc = _load("category_ratings.json")
    out: Dict[str, Dict[str, Dict[str, float]]] = {}
    for model in doc["models"]:
        out[model["model_id"]] = {
            EvalMode.RAG: dict(model["rag"]),
            EvalMode.KG: dict(model["kg"]),
        }
    return out


def synthesize_ratings(mean: float, rater_ids: "Tuple[str, str]" = SYNTH_RATER_IDS) -> "List[int]":
    """Two integer scores whose mean equals the printed value. Whole-point
    means duplicate; half-point means use floor and ceil."""
    low = math.floor(mean)
    high = math.ceil(mean)
    if low == high:
        return [low, low]
    if (low + high) / 2 != mean:
        raise ValueError(f"mean {mean} is not representable by two integer raters")
    return [low, high]


def reference_ratings() -> List[HumanRating]:
    """Integer per-rater ratings that aggregate back to the printed
    category-level table."""
    ratings: List[HumanRating] = []
    for model_id, by_mode in reference_category_means().items():
        for mode, by_category in by_mode.items():
            for category in CATEGORIES:
                values = synthesize_ratings(by_category[category])
                for rater_id, value in zip(SYNTH_RATER_IDS, values):
                    ratings.append(
                        HumanRating(
                            rater_id=rater_id,
                            model_id=model_id,
                            mode=mode,
                            category=category,
                            value=value,
                        )
                    )
    return ratings
