"""Case-record model and JSON Lines ingestion.

A record holds demographics, reported distress causes, 1-6 session notes and
an optional explicit outcomes list. The wire format is one JSON object per
line, UTF-8; unknown fields are carried through untouched so ingest ->
serialize -> ingest is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from counselgraph.errors import CounselGraphError

MAX_SESSIONS = 6


class CorpusParseError(CounselGraphError):
    def __init__(self, message: str, line_no: Optional[int] = None):
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)
        self.line_no = line_no


class InvariantError(CounselGraphError):
    def __init__(self, message: str, case_id: str = "", line_no: Optional[int] = None):
        prefix = f"line {line_no}: " if line_no is not None else ""
        suffix = f" (case {case_id})" if case_id else ""
        super().__init__(prefix + message + suffix)
        self.case_id = case_id
        self.line_no = line_no


@dataclass
class Demographics:
    age: Optional[int] = None  # None = unknown
    sex: str = ""
    marital_status: str = ""
    occupation: str = ""
    literacy_level: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SessionNote:
    index: int
    narrative: str
    contextual_factors: List[str] = field(default_factory=list)
    emotional_responses: List[str] = field(default_factory=list)
    interventions_given: List[str] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CaseRecord:
    id: str
    demographics: Demographics
    distress_causes: List[str] = field(default_factory=list)
    sessions: List[SessionNote] = field(default_factory=list)
    outcomes: List[str] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class IngestDiagnostic:
    line_no: int
    case_id: str
    message: str


@dataclass
class IngestResult:
    records: List[CaseRecord]
    diagnostics: List[IngestDiagnostic]


def check_record(record: CaseRecord, strict_sessions: bool = False) -> None:
    """Raise InvariantError on structural violations.

    strict_sessions additionally enforces the 2-6 session range captured in
    real intake records; the default lower bound of 1 keeps minimal fixtures
    usable.
    """
    if not record.id:
        raise InvariantError("record id is empty")
    n = len(record.sessions)
    low = 2 if strict_sessions else 1
    if not low <= n <= MAX_SESSIONS:
        raise InvariantError(
            f"expected {low}-{MAX_SESSIONS} sessions, found {n}", case_id=record.id
        )
    previous = 0
    for position, session in enumerate(record.sessions):
        if position == 0 and session.index != 1:
            raise InvariantError(
                f"first session index must be 1, found {session.index}", case_id=record.id
            )
        if session.index <= previous:
            raise InvariantError(
                f"session indices must be strictly increasing, found {session.index} "
                f"after {previous}",
                case_id=record.id,
            )
        if session.index > MAX_SESSIONS:
            raise InvariantError(
                f"session index {session.index} exceeds {MAX_SESSIONS}", case_id=record.id
            )
        if not session.narrative or not session.narrative.strip():
            raise InvariantError(
                f"session {session.index} narrative is empty", case_id=record.id
            )
        previous = session.index


def _str_list(value: Any, name: str, line_no: Optional[int]) -> List[str]:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise CorpusParseError(f"{name} must be a list of strings", line_no)
    return list(value)


_DEMOGRAPHIC_KEYS = {"age", "sex", "marital_status", "occupation", "literacy_level"}
_SESSION_KEYS = {"index", "narrative", "contextual_factors", "emotional_responses", "interventions_given"}
_RECORD_KEYS = {"id", "demographics", "distress_causes", "sessions", "outcomes"}


def record_from_obj(obj: Any, line_no: Optional[int] = None) -> CaseRecord:
    if not isinstance(obj, dict):
        raise CorpusParseError("record must be a JSON object", line_no)
    case_id = obj.get("id")
    if not isinstance(case_id, str):
        raise CorpusParseError('record needs a string "id"', line_no)

    demo_obj = obj.get("demographics", {})
    if not isinstance(demo_obj, dict):
        raise CorpusParseError("demographics must be an object", line_no)
    age = demo_obj.get("age")
    if age is not None and not isinstance(age, int):
        raise CorpusParseError("age must be an integer or null", line_no)
    demographics = Demographics(
        age=age,
        sex=str(demo_obj.get("sex", "")),
        marital_status=str(demo_obj.get("marital_status", "")),
        occupation=str(demo_obj.get("occupation", "")),
        literacy_level=str(demo_obj.get("literacy_level", "")),
        extra={k: v for k, v in demo_obj.items() if k not in _DEMOGRAPHIC_KEYS},
    )

    sessions = []
    raw_sessions = obj.get("sessions", [])
    if not isinstance(raw_sessions, list):
        raise CorpusParseError("sessions must be an array", line_no)
    for raw in raw_sessions:
        if not isinstance(raw, dict):
            raise CorpusParseError("each session must be an object", line_no)
        index = raw.get("index")
        if not isinstance(index, int):
            raise CorpusParseError("session index must be an integer", line_no)
        narrative = raw.get("narrative")
        if not isinstance(narrative, str):
            raise CorpusParseError("session narrative must be a string", line_no)
        sessions.append(
            SessionNote(
                index=index,
                narrative=narrative,
                contextual_factors=_str_list(raw.get("contextual_factors"), "contextual_factors", line_no),
                emotional_responses=_str_list(raw.get("emotional_responses"), "emotional_responses", line_no),
                interventions_given=_str_list(raw.get("interventions_given"), "interventions_given", line_no),
                extra={k: v for k, v in raw.items() if k not in _SESSION_KEYS},
            )
        )

    return CaseRecord(
        id=case_id,
        demographics=demographics,
        distress_causes=_str_list(obj.get("distress_causes"), "distress_causes", line_no),
        sessions=sessions,
        outcomes=_str_list(obj.get("outcomes"), "outcomes", line_no),
        extra={k: v for k, v in obj.items() if k not in _RECORD_KEYS},
    )


def record_to_obj(record: CaseRecord) -> Dict[str, Any]:
    demo = {
        "age": record.demographics.age,
        "sex": record.demographics.sex,
        "marital_status": record.demographics.marital_status,
        "occupation": record.demographics.occupation,
        "literacy_level": record.demographics.literacy_level,
    }
    demo.update(record.demographics.extra)
    obj: Dict[str, Any] = {
        "id": record.id,
        "demographics": demo,
        "distress_causes": record.distress_causes,
        "sessions": [],
        "outcomes": record.outcomes,
    }
    for session in record.sessions:
        session_obj = {
            "index": session.index,
            "narrative": session.narrative,
            "contextual_factors": session.contextual_factors,
            "emotional_responses": session.emotional_responses,
            "interventions_given": session.interventions_given,
        }
        session_obj.update(session.extra)
        obj["sessions"].append(session_obj)
    obj.update(record.extra)
    return obj


def ingest_cases(
    lines: Iterable[str],
    lenient: bool = False,
    strict_sessions: bool = False,
) -> IngestResult:
    """Parse JSONL case records. In lenient mode, records violating invariants
    are skipped and reported as diagnostics; otherwise the first violation
    raises."""
    records: List[CaseRecord] = []
    diagnostics: List[IngestDiagnostic] = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        record = record_from_obj(obj, line_no)
        try:
            check_record(record, strict_sessions=strict_sessions)
        except InvariantError as exc:
            if not lenient:
                raise InvariantError(str(exc), case_id=record.id, line_no=line_no) from exc
            diagnostics.append(IngestDiagnostic(line_no, record.id, str(exc)))
            continue
        records.append(record)
    return IngestResult(records, diagnostics)


def ingest_file(path: Union[str, Path], lenient: bool = False, strict_sessions: bool = False) -> IngestResult:
    with open(path, "r", encoding="utf-8") as handle:
        return ingest_cases(handle, lenient=lenient, strict_sessions=strict_sessions)


def write_cases(records: Iterable[CaseRecord], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record_to_obj(record), ensure_ascii=False) + "\n")


def cases_to_jsonl(records: Iterable[CaseRecord]) -> str:
    return "".join(json.dumps(record_to_obj(record), ensure_ascii=False) + "\n" for record in records)
