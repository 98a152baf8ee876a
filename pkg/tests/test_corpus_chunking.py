"""Word-window chunking spans and identifiers."""

import random

import pytest

from counselgraph.corpus.chunking import (
    ChunkingError,
    EmptyTextError,
    chunk_case,
    chunk_cases,
    chunk_narrative,
)
from counselgraph.corpus.records import CaseRecord, Demographics, SessionNote
from oracles import check_chunk_spans


def words(n):
    return " ".join(f"w{i}" for i in range(1, n + 1))


def spans(chunks):
    return [(c.start_word, c.end_word) for c in chunks]


def test_six_words_window_four_stride_two():
    chunks = chunk_narrative(words(6), "case-001", 1, max_words=4, stride=2)
    assert spans(chunks) == [(1, 4), (3, 6)]
    assert chunks[0].text == "w1 w2 w3 w4"
    assert chunks[1].text == "w3 w4 w5 w6"


def test_twelve_hundred_words_default_shape():
    chunks = chunk_narrative(words(1200), "case-001", 1, max_words=500, stride=250)
    assert spans(chunks) == [(1, 500), (251, 750), (501, 1000), (751, 1200)]


def test_short_text_yields_single_chunk():
    chunks = chunk_narrative(words(12), "case-001", 2)
    assert spans(chunks) == [(1, 12)]


def test_exact_window_fit_yields_single_chunk():
    chunks = chunk_narrative(words(10), "case-001", 1, max_words=10, stride=5)
    assert spans(chunks) == [(1, 10)]


def test_default_stride_is_half_window():
    via_default = chunk_narrative(words(30), "case-001", 1, max_words=8)
    explicit = chunk_narrative(words(30), "case-001", 1, max_words=8, stride=4)
    assert spans(via_default) == spans(explicit)


def test_default_stride_floor_is_one():
    chunks = chunk_narrative(words(3), "case-001", 1, max_words=1)
    assert spans(chunks) == [(1, 1), (2, 2), (3, 3)]


def test_overlap_equals_window_minus_stride():
    chunks = chunk_narrative(words(100), "case-001", 1, max_words=30, stride=20)
    for left, right in zip(chunks, chunks[1:]):
        overlap = left.end_word - right.start_word + 1
        assert overlap == 10


def test_chunk_ids_encode_case_session_seq():
    chunks = chunk_narrative(words(25), "case-007", 3, max_words=10, stride=10)
    assert [c.id for c in chunks] == [
        "case-007:s3:c1",
        "case-007:s3:c2",
        "case-007:s3:c3",
    ]
    assert all(c.case_id == "case-007" and c.session_index == 3 for c in chunks)


def test_empty_text_raises():
    with pytest.raises(EmptyTextError):
        chunk_narrative("   ", "case-001", 1)


def test_bad_parameters_raise():
    with pytest.raises(ChunkingError):
        chunk_narrative(words(5), "case-001", 1, max_words=0)
    with pytest.raises(ChunkingError):
        chunk_narrative(words(5), "case-001", 1, max_words=4, stride=0)
    with pytest.raises(ChunkingError):
        chunk_narrative(words(5), "case-001", 1, max_words=4, stride=5)


def test_random_lengths_satisfy_invariants():
    rng = random.Random(11)
    for _ in range(60):
        total = rng.randint(1, 900)
        max_words = rng.randint(1, 300)
        stride = rng.randint(1, max_words)
        chunks = chunk_narrative(words(total), "case-001", 1,
                                 max_words=max_words, stride=stride)
        check_chunk_spans(total, max_words, stride, spans(chunks))
        for chunk in chunks:
            expected = " ".join(
                f"w{i}" for i in range(chunk.start_word, chunk.end_word + 1)
            )
            assert chunk.text == expected


def test_chunk_case_walks_all_sessions():
    record = CaseRecord(
        id="case-009",
        demographics=Demographics(),
        sessions=[
            SessionNote(index=1, narrative=words(6)),
            SessionNote(index=2, narrative=words(9)),
        ],
    )
    chunks = chunk_case(record, max_words=4, stride=2)
    assert [c.id for c in chunks] == [
        "case-009:s1:c1",
        "case-009:s1:c2",
        "case-009:s2:c1",
        "case-009:s2:c2",
        "case-009:s2:c3",
        "case-009:s2:c4",
    ]


def test_chunk_cases_concatenates_in_order():
    records = [
        CaseRecord(id="case-001", demographics=Demographics(),
                   sessions=[SessionNote(index=1, narrative=words(3))]),
        CaseRecord(id="case-002", demographics=Demographics(),
                   sessions=[SessionNote(index=1, narrative=words(3))]),
    ]
    chunks = chunk_cases(records, max_words=10)
    assert [c.case_id for c in chunks] == ["case-001", "case-002"]
