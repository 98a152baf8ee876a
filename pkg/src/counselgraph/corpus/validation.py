"""Quality checks over case records: completeness and redaction lint."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List

from counselgraph.corpus.records import CaseRecord

# Words that signal an outcome was written down even without the explicit
# outcomes field. Matched case-insensitively against whole words.
OUTCOME_MARKERS = (
    "improved",
    "improvement",
    "resolved",
    "recovered",
    "reduced",
    "stabilized",
    "relapsed",
    "unchanged",
)

_MARKER_RE = re.compile(
    r"\b(" + "|".join(OUTCOME_MARKERS) + r")\b", re.IGNORECASE
)

# yyyy-mm-dd, dd/mm/yyyy and dd-mm-yyyy style strings
_DATE_RE = re.compile(
    r"\b(?:\d{4}[-/]\d{1,2}[-/]\d{1,2}|\d{1,2}[-/]\d{1,2}[-/]\d{2,4})\b"
)
# 7+ digit runs allowing separators, the common local phone shapes
_PHONE_RE = re.compile(r"(?<!\d)(?:\+?\d[\d\s().-]{5,}\d)(?!\d)")

DEFAULT_DENYLIST = ("address", "national id", "nid", "passport")


@dataclass
class CompletenessIssue:
    case_id: str
    field_name: str
    message: str


@dataclass
class RedactionHit:
    case_id: str
    session_index: int
    kind: str  # "date" | "phone" | "denylist"
    span: str


@dataclass
class CaseReport:
    case_id: str
    completeness: List[CompletenessIssue] = field(default_factory=list)
    redaction: List[RedactionHit] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.completeness and not self.redaction


def check_completeness(record: CaseRecord) -> List[CompletenessIssue]:
    issues: List[CompletenessIssue] = []
    demo = record.demographics
    if demo.age is None:
        issues.append(CompletenessIssue(record.id, "age", "age missing"))
    for name in ("sex", "marital_status", "occupation", "literacy_level"):
        if not getattr(demo, name):
            issues.append(CompletenessIssue(record.id, name, f"{name} missing"))
    if not record.distress_causes:
        issues.append(
            CompletenessIssue(record.id, "distress_causes", "no distress causes recorded")
        )
    has_outcome = bool(record.outcomes)
    if not has_outcome:
        for session in record.sessions:
            if _MARKER_RE.search(session.narrative):
                has_outcome = True
                break
    if not has_outcome:
        issues.append(
            CompletenessIssue(
                record.id, "outcomes", "no outcome statement found in record"
            )
        )
    return issues


def _overlaps(span: "tuple[int, int]", others: "List[tuple[int, int]]") -> bool:
    start, end = span
    return any(start < o_end and o_start < end for o_start, o_end in others)


def scan_redaction(record: CaseRecord, denylist: "tuple[str, ...]" = DEFAULT_DENYLIST) -> List[RedactionHit]:
    """Flag date-like strings, phone-like digit runs and denylist words in
    session narratives. A digit run inside a date match is reported once, as a
    date."""
    hits: List[RedactionHit] = []
    for session in record.sessions:
        text = session.narrative
        date_spans = [m.span() for m in _DATE_RE.finditer(text)]
        for m in _DATE_RE.finditer(text):
            hits.append(RedactionHit(record.id, session.index, "date", m.group()))
        for m in _PHONE_RE.finditer(text):
            if _overlaps(m.span(), date_spans):
                continue
            digits = re.sub(r"\D", "", m.group())
            if len(digits) < 7:
                continue
            hits.append(RedactionHit(record.id, session.index, "phone", m.group()))
        lowered = text.lower()
        for word in denylist:
            if word in lowered:
                hits.append(RedactionHit(record.id, session.index, "denylist", word))
    return hits


def validate_case(record: CaseRecord) -> CaseReport:
    return CaseReport(
        case_id=record.id,
        completeness=check_completeness(record),
        redaction=scan_redaction(record),
    )


def validate_cases(records: "List[CaseRecord]") -> List[CaseReport]:
    return [validate_case(record) for record in records]
