"""Demographic summaries over a case corpus."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List

from counselgraph.corpus.records import CaseRecord

LITERACY_BUCKETS = (
    "signature-only",
    "no-signature",
    "grade-1-5",
    "grade-6-10",
    "ssc-hsc",
)

UNKNOWN = "unknown"


@dataclass
class DemographicSummary:
    total: int
    literacy: Dict[str, int]
    occupation: Dict[str, int]
    sex: Dict[str, int]
    marital_status: Dict[str, int]


def literacy_bucket(level: str) -> str:
    value = level.strip().lower()
    if value in LITERACY_BUCKETS:
        return value
    return UNKNOWN


def summarize_demographics(records: List[CaseRecord]) -> DemographicSummary:
    literacy: Counter = Counter()
    occupation: Counter = Counter()
    sex: Counter = Counter()
    marital: Counter = Counter()
    for record in records:
        demo = record.demographics
        literacy[literacy_bucket(demo.literacy_level)] += 1
        occupation[demo.occupation.strip().lower() or UNKNOWN] += 1
        sex[demo.sex.strip().lower() or UNKNOWN] += 1
        marital[demo.marital_status.strip().lower() or UNKNOWN] += 1
    # literacy keeps every bucket, zero-filled, in canonical order
    literacy_out = {bucket: literacy.get(bucket, 0) for bucket in LITERACY_BUCKETS}
    if literacy.get(UNKNOWN):
        literacy_out[UNKNOWN] = literacy[UNKNOWN]
    return DemographicSummary(
        total=len(records),
        literacy=literacy_out,
        occupation=dict(sorted(occupation.items(), key=lambda kv: (-kv[1], kv[0]))),
        sex=dict(sorted(sex.items(), key=lambda kv: (-kv[1], kv[0]))),
        marital_status=dict(sorted(marital.items(), key=lambda kv: (-kv[1], kv[0]))),
    )
