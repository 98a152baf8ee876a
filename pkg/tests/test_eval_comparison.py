"""Mode deltas and model shortlisting."""

import pytest

from counselgraph.evaluation.comparison import (
    ComparisonError,
    ScoreRow,
    Shortlist,
    ShortlistCriteria,
    UnmatchedModelError,
    compare_modes,
    exact_delta,
    shortlist,
)
from counselgraph.evaluation.ratings import EvalMode
from counselgraph.evaluation.reference import (
    reference_mode_rows,
    reference_score_rows,
)


def row(model="model-a", mode=EvalMode.RAG, bert=85.0, sbert=83.0, human=None):
    return ScoreRow(model_id=model, mode=mode, bert_f1=bert, sbert_cos=sbert,
                    human_avg=human)


class TestScoreRow:
    def test_valid_row(self):
        assert row().bert_f1 == 85.0

    def test_mode_validated(self):
        with pytest.raises(ComparisonError):
            row(mode="other")

    @pytest.mark.parametrize("bert", [-0.1, 100.5])
    def test_metric_range_validated(self, bert):
        with pytest.raises(ComparisonError):
            row(bert=bert)


class TestExactDelta:
    def test_no_float_noise(self):
        # naive subtraction gives 0.7899999999999920
        assert exact_delta(86.39, 87.18) == 0.79
        assert exact_delta(83.09, 83.28) == 0.19

    def test_negative_deltas(self):
        assert exact_delta(86.22, 82.79) == -3.43
        assert exact_delta(2.5, 1.8) == -0.7


class TestCompareModes:
    def test_reference_table_deltas(self):
        rag_rows, kg_rows = reference_mode_rows()
        rows = compare_modes(rag_rows, kg_rows)
        by_cell = {(r.model_id, r.metric): r for r in rows}

        expected = {
            ("Gemini-2.5-Flash", "bert_f1"): (0.79, True),
            ("Gemini-2.5-Flash", "sbert_cos"): (0.19, True),
            ("Gemini-2.5-Flash", "human_avg"): (-0.7, True),
            ("Llama-3.3-70B", "bert_f1"): (0.54, True),
            ("Llama-3.3-70B", "sbert_cos"): (-0.52, False),
            ("Llama-3.3-70B", "human_avg"): (-0.6, True),
            ("Gemma-3-27b", "bert_f1"): (0.63, True),
            ("Gemma-3-27b", "sbert_cos"): (-4.24, False),
            ("Gemma-3-27b", "human_avg"): (-0.9, True),
            ("GPT-4.1", "bert_f1"): (0.8, True),
            ("GPT-4.1", "sbert_cos"): (-3.43, False),
            ("GPT-4.1", "human_avg"): (-0.4, True),
        }
        assert len(rows) == len(expected)
        for cell, (delta, improved) in expected.items():
            assert by_cell[cell].delta == delta
            assert by_cell[cell].improved is improved

    def test_rows_sorted_by_model_then_metric(self):
        rag_rows, kg_rows = reference_mode_rows()
        rows = compare_modes(rag_rows, kg_rows)
        models = [r.model_id for r in rows]
        assert models == sorted(models)
        for i in range(0, len(rows), 3):
            assert [r.metric for r in rows[i : i + 3]] == [
                "bert_f1", "sbert_cos", "human_avg",
            ]

    def test_unmatched_models_raise(self):
        rag_rows = [row(model="model-a"), row(model="model-b")]
        kg_rows = [row(model="model-b", mode=EvalMode.KG),
                   row(model="model-c", mode=EvalMode.KG)]
        with pytest.raises(UnmatchedModelError) as excinfo:
            compare_modes(rag_rows, kg_rows)
        assert excinfo.value.missing_in_kg == ["model-a"]
        assert excinfo.value.missing_in_rag == ["model-c"]

    def test_human_metric_skipped_when_absent(self):
        rows = compare_modes(
            [row(model="m")], [row(model="m", mode=EvalMode.KG, bert=86.0)]
        )
        assert [r.metric for r in rows] == ["bert_f1", "sbert_cos"]


class TestShortlist:
    def test_reference_best_by_metric(self):
        result = shortlist(reference_score_rows())
        assert result.best_by_metric["sbert_cos"] == "GPT-4.1"  # 86.22
        assert result.best_by_metric["bert_f1"] == "Llama-3.3-70B"  # 86.84

    def test_reference_top_four_by_sbert(self):
        result = shortlist(reference_score_rows(), ShortlistCriteria(top_n=4))
        assert result.top_models[0] == "GPT-4.1"
        assert len(result.top_models) == 4
        assert set(result.top_models) <= {
            r.model_id for r in reference_score_rows()
        }

    def test_single_row(self):
        result = shortlist([row(model="only")])
        assert result == Shortlist(
            best_by_metric={"bert_f1": "only", "sbert_cos": "only"},
            top_models=["only"],
        )

    def test_tie_breaks_to_smaller_model_id(self):
        rows = [row(model="zeta", bert=90.0, sbert=90.0),
                row(model="alpha", bert=90.0, sbert=90.0)]
        result = shortlist(rows, ShortlistCriteria(top_n=1))
        assert result.best_by_metric == {"bert_f1": "alpha", "sbert_cos": "alpha"}
        assert result.top_models == ["alpha"]

    def test_criteria_validated(self):
        with pytest.raises(ComparisonError):
            ShortlistCriteria(top_n=0)
        with pytest.raises(ComparisonError):
            ShortlistCriteria(by_metric="human_avg")

    def test_empty_rows_rejected(self):
        with pytest.raises(ComparisonError):
            shortlist([])
