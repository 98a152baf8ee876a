"""Human rating capture and aggregation.

Raters give integer Likert scores (1 best, 5 worst) per category. Printed
half-point scores are aggregate artifacts: means over raters, rounded
half-up to one decimal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, Iterable, List, Tuple

from counselgraph.errors import CounselGraphError

CATEGORIES = (
    "Wording",
    "ProblemAnalysis",
    "Guidance",
    "Treatment",
    "EnvironmentalAnalysis",
)


class EvalMode:
    RAG = "rag"
    KG = "kg"
    ALL = (RAG, KG)


class RatingError(CounselGraphError):
    pass


class MissingCategoryError(RatingError):
    def __init__(self, missing: "List[Tuple[str, str, str]]"):
        cells = ", ".join(f"({m}, {mode}, {cat})" for m, mode, cat in missing)
        super().__init__(f"no ratings for: {cells}")
        self.missing = missing


@dataclass(frozen=True)
class HumanRating:
    rater_id: str
    model_id: str
    mode: str
    category: str
    value: int

    def __post_init__(self) -> None:
        if not self.rater_id:
            raise RatingError("rater_id is required")
        if not self.model_id:
            raise RatingError("model_id is required")
        if self.mode not in EvalMode.ALL:
            raise RatingError(f"mode must be one of {EvalMode.ALL}, got {self.mode!r}")
        if self.category not in CATEGORIES:
            raise RatingError(
                f"category must be one of {CATEGORIES}, got {self.category!r}"
            )
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise RatingError(f"value must be an integer, got {self.value!r}")
        if not 1 <= self.value <= 5:
            raise RatingError(f"value must be in 1..5, got {self.value}")


@dataclass
class CategoryAverages:
    model_id: str
    mode: str
    by_category: Dict[str, float]
    overall: float


def round_half_up(value: float, places: int = 1) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(str(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def aggregate_ratings(
    ratings: "Iterable[HumanRating]",
    allow_missing: bool = False,
) -> List[CategoryAverages]:
    """Mean per (model, mode, category) then overall = mean of the five
    category means, both rounded half-up to one decimal.

    A rater may revise a score; the last rating per (rater, model, mode,
    category) wins. Every model/mode pair must cover all five categories
    unless allow_missing is set, in which case incomplete pairs average over
    the categories present.
    """
    latest: Dict[Tuple[str, str, str, str], int] = {}
    for rating in ratings:
        key = (rating.rater_id, rating.model_id, rating.mode, rating.category)
        latest[key] = rating.value

    cells: Dict[Tuple[str, str], Dict[str, List[int]]] = {}
    for (rater_id, model_id, mode, category), value in latest.items():
        cells.setdefault((model_id, mode), {}).setdefault(category, []).append(value)

    missing: List[Tuple[str, str, str]] = []
    for (model_id, mode), by_category in sorted(cells.items()):
        for category in CATEGORIES:
            if category not in by_category:
                missing.append((model_id, mode, category))
    if missing and not allow_missing:
        raise MissingCategoryError(missing)

    results: List[CategoryAverages] = []
    for (model_id, mode), by_category in sorted(cells.items()):
        means: Dict[str, float] = {}
        raw_means: List[float] = []
        for category in CATEGORIES:
            values = by_category.get(category)
            if not values:
                continue
            mean = sum(values) / len(values)
            raw_means.append(mean)
            means[category] = round_half_up(mean, 1)
        overall = round_half_up(sum(raw_means) / len(raw_means), 1)
        results.append(
            CategoryAverages(
                model_id=model_id, mode=mode, by_category=means, overall=overall
            )
        )
    return results


def rating_to_obj(rating: HumanRating) -> Dict[str, object]:
    return {
        "rater_id": rating.rater_id,
        "model_id": rating.model_id,
        "mode": rating.mode,
        "category": rating.category,
        "value": rating.value,
    }


def rating_from_obj(obj: Dict[str, object]) -> HumanRating:
    try:
        return HumanRating(
            rater_id=str(obj["rater_id"]),
            model_id=str(obj["model_id"]),
            mode=str(obj["mode"]),
            category=str(obj["category"]),
            value=obj["value"],  # type: ignore[arg-type]
        )
    except KeyError as exc:
        raise RatingError(f"rating object missing field {exc}") from exc


def load_ratings_jsonl(lines: Iterable[str]) -> List[HumanRating]:
    ratings: List[HumanRating] = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RatingError(f"line {line_no}: invalid JSON: {exc.msg}") from exc
        ratings.append(rating_from_obj(obj))
    return ratings
