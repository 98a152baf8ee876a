"""Word-window chunking of session narratives.

Spans are 1-indexed and inclusive over whitespace tokens. Windows start at
1 + i * stride and the last window is the first one whose end reaches the
final word, so every word is covered and consecutive chunks overlap by
max_words - stride words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from counselgraph.corpus.records import CaseRecord
from counselgraph.errors import CounselGraphError

DEFAULT_MAX_WORDS = 500


class ChunkingError(CounselGraphError):
    pass


class EmptyTextError(ChunkingError):
    pass


@dataclass
class Chunk:
    id: str
    case_id: str
    session_index: int
    seq: int
    text: str
    start_word: int
    end_word: int


def chunk_narrative(
    text: str,
    case_id: str,
    session_index: int,
    max_words: int = DEFAULT_MAX_WORDS,
    stride: Optional[int] = None,
) -> List[Chunk]:
    words = text.split()
    if not words:
        raise EmptyTextError(f"empty narrative (case {case_id}, session {session_index})")
    if max_words < 1:
        raise ChunkingError(f"max_words must be >= 1, got {max_words}")
    if stride is None:
        stride = max(1, max_words // 2)
    if not 1 <= stride <= max_words:
        raise ChunkingError(f"stride must be in 1..{max_words}, got {stride}")

    total = len(words)
    chunks: List[Chunk] = []
    seq = 1
    i = 0
    while True:
        start = 1 + i * stride
        end = min(start + max_words - 1, total)
        chunks.append(
            Chunk(
                id=f"{case_id}:s{session_index}:c{seq}",
                case_id=case_id,
                session_index=session_index,
                seq=seq,
                text=" ".join(words[start - 1 : end]),
                start_word=start,
                end_word=end,
            )
        )
        if end >= total:
            break
        seq += 1
        i += 1
    return chunks


def chunk_case(
    record: CaseRecord,
    max_words: int = DEFAULT_MAX_WORDS,
    stride: Optional[int] = None,
) -> List[Chunk]:
    chunks: List[Chunk] = []
    for session in record.sessions:
        chunks.extend(
            chunk_narrative(
                session.narrative,
                case_id=record.id,
                session_index=session.index,
                max_words=max_words,
                stride=stride,
            )
        )
    return chunks


def chunk_cases(
    records: "List[CaseRecord]",
    max_words: int = DEFAULT_MAX_WORDS,
    stride: Optional[int] = None,
) -> List[Chunk]:
    chunks: List[Chunk] = []
    for record in records:
        chunks.extend(chunk_case(record, max_words=max_words, stride=stride))
    return chunks
