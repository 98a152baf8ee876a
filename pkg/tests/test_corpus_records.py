"""Case-record parsing, invariants, and lossless JSONL round-trips."""

import json

import pytest

from counselgraph.corpus.records import (
    CaseRecord,
    CorpusParseError,
    Demographics,
    InvariantError,
    SessionNote,
    cases_to_jsonl,
    check_record,
    ingest_cases,
    ingest_file,
    record_from_obj,
    record_to_obj,
    write_cases,
)


def make_record(case_id="case-001", session_count=2):
    sessions = [
        SessionNote(index=i, narrative=f"session {i} notes")
        for i in range(1, session_count + 1)
    ]
    return CaseRecord(
        id=case_id,
        demographics=Demographics(age=30, sex="female", marital_status="married",
                                  occupation="housemaid", literacy_level="signature-only"),
        distress_causes=["economic hardship"],
        sessions=sessions,
        outcomes=["worry reduced"],
    )


def test_valid_record_passes_check():
    check_record(make_record())


def test_empty_id_rejected():
    record = make_record(case_id="")
    with pytest.raises(InvariantError):
        check_record(record)


def test_session_count_bounds():
    with pytest.raises(InvariantError):
        check_record(make_record(session_count=0))
    with pytest.raises(InvariantError):
        check_record(make_record(session_count=7))
    check_record(make_record(session_count=6))


def test_strict_sessions_requires_two():
    record = make_record(session_count=1)
    check_record(record)
    with pytest.raises(InvariantError):
        check_record(record, strict_sessions=True)


def test_first_session_must_be_one():
    record = make_record()
    record.sessions[0].index = 2
    record.sessions[1].index = 3
    with pytest.raises(InvariantError) as excinfo:
        check_record(record)
    assert "first session" in str(excinfo.value)


def test_session_indices_strictly_increasing():
    record = make_record(session_count=3)
    record.sessions[2].index = 2
    with pytest.raises(InvariantError):
        check_record(record)


def test_blank_narrative_rejected():
    record = make_record()
    record.sessions[1].narrative = "   "
    with pytest.raises(InvariantError) as excinfo:
        check_record(record)
    assert "narrative" in str(excinfo.value)
    assert "case-001" in str(excinfo.value)


def test_round_trip_is_identity():
    record = make_record()
    assert record_from_obj(record_to_obj(record)) == record


def test_unknown_fields_survive_round_trip():
    obj = record_to_obj(make_record())
    obj["referral_notes"] = {"clinic": "ward-3"}
    obj["demographics"]["religion"] = "unspecified"
    obj["sessions"][0]["duration_minutes"] = 45
    restored = record_from_obj(obj)
    assert restored.extra == {"referral_notes": {"clinic": "ward-3"}}
    assert restored.demographics.extra == {"religion": "unspecified"}
    assert restored.sessions[0].extra == {"duration_minutes": 45}
    assert record_to_obj(restored) == obj


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda o: o.pop("id"), "id"),
        (lambda o: o.update(id=7), "id"),
        (lambda o: o.update(demographics=[]), "demographics"),
        (lambda o: o["demographics"].update(age="thirty"), "age"),
        (lambda o: o.update(sessions={}), "sessions"),
        (lambda o: o["sessions"].append("note"), "session"),
        (lambda o: o["sessions"][0].pop("index"), "index"),
        (lambda o: o["sessions"][0].update(narrative=3), "narrative"),
        (lambda o: o.update(distress_causes="debt"), "distress_causes"),
        (lambda o: o.update(outcomes=[1]), "outcomes"),
    ],
)
def test_malformed_objects_raise_parse_error(mutate, fragment):
    obj = record_to_obj(make_record())
    mutate(obj)
    with pytest.raises(CorpusParseError) as excinfo:
        record_from_obj(obj, line_no=4)
    assert str(excinfo.value).startswith("line 4: ")
    assert fragment in str(excinfo.value)


def test_ingest_reports_line_numbers_for_bad_json():
    lines = ['{"id": "case-001", "sessions": [{"index": 1, "narrative": "x"}]}', "{oops"]
    with pytest.raises(CorpusParseError) as excinfo:
        ingest_cases(lines)
    assert excinfo.value.line_no == 2


def test_ingest_skips_blank_lines():
    line = json.dumps(record_to_obj(make_record()))
    result = ingest_cases(["", line, "   ", ""])
    assert len(result.records) == 1
    assert result.diagnostics == []


def test_strict_ingest_raises_with_location():
    bad = record_to_obj(make_record())
    bad["sessions"] = []
    with pytest.raises(InvariantError) as excinfo:
        ingest_cases([json.dumps(bad)])
    assert excinfo.value.line_no == 1
    assert "case-001" in str(excinfo.value)


def test_lenient_ingest_collects_diagnostics():
    good = record_to_obj(make_record("case-001"))
    bad = record_to_obj(make_record("case-002"))
    bad["sessions"][0]["narrative"] = ""
    result = ingest_cases([json.dumps(good), json.dumps(bad)], lenient=True)
    assert [r.id for r in result.records] == ["case-001"]
    assert len(result.diagnostics) == 1
    assert result.diagnostics[0].line_no == 2
    assert result.diagnostics[0].case_id == "case-002"


def test_file_round_trip_preserves_unicode(tmp_path):
    record = make_record()
    record.sessions[0].narrative = "তিনি দুশ্চিন্তা নিয়ে এসেছিলেন"
    path = tmp_path / "cases.jsonl"
    write_cases([record], path)
    raw = path.read_text(encoding="utf-8")
    assert "দুশ্চিন্তা" in raw  # not escaped
    result = ingest_file(path)
    assert result.records == [record]


def test_cases_to_jsonl_matches_file_output(tmp_path):
    records = [make_record("case-001"), make_record("case-002")]
    path = tmp_path / "cases.jsonl"
    write_cases(records, path)
    assert path.read_text(encoding="utf-8") == cases_to_jsonl(records)
