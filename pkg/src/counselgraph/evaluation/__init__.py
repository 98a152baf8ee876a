"""Evaluation: automated metrics, human ratings, comparisons and reports."""

from counselgraph.evaluation.comparison import (
    HIGHER_BETTER,
    LOWER_BETTER,
    METRICS,
    ComparisonError,
    ComparisonRow,
    ScoreRow,
    Shortlist,
    ShortlistCriteria,
    UnmatchedModelError,
    compare_modes,
    exact_delta,
    shortlist,
)
from counselgraph.evaluation.metrics import (
    BertScore,
    EmptyMatrixError,
    MetricError,
    TokenEmbeddingMatrix,
    bertscore_f1,
    sentence_cosine,
)
from counselgraph.evaluation.ratings import (
    CATEGORIES,
    CategoryAverages,
    EvalMode,
    HumanRating,
    MissingCategoryError,
    RatingError,
    aggregate_ratings,
    load_ratings_jsonl,
    rating_from_obj,
    rating_to_obj,
    round_half_up,
)
from counselgraph.evaluation.reference import (
    REFERENCE_PROVIDER,
    reference_category_means,
    reference_mode_rows,
    reference_ratings,
    reference_score_rows,
    synthesize_ratings,
)
from counselgraph.evaluation.reporting import (
    ReportDocument,
    render_report,
    write_report,
)
