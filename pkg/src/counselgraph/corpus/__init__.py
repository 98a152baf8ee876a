"""Case-record corpus: models, ingestion, validation, stats and chunking."""

from counselgraph.corpus.chunking import (
    DEFAULT_MAX_WORDS,
    Chunk,
    ChunkingError,
    EmptyTextError,
    chunk_case,
    chunk_cases,
    chunk_narrative,
)
from counselgraph.corpus.fixture import (
    CASE_COUNT,
    LITERACY_COUNTS,
    MARITAL_COUNTS,
    OCCUPATION_COUNTS,
    SEX_COUNTS,
    generate_reference_corpus,
)
from counselgraph.corpus.records import (
    MAX_SESSIONS,
    CaseRecord,
    CorpusParseError,
    Demographics,
    IngestDiagnostic,
    IngestResult,
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
from counselgraph.corpus.stats import (
    LITERACY_BUCKETS,
    DemographicSummary,
    literacy_bucket,
    summarize_demographics,
)
from counselgraph.corpus.validation import (
    CaseReport,
    CompletenessIssue,
    RedactionHit,
    check_completeness,
    scan_redaction,
    validate_case,
    validate_cases,
)
