"""Dense retrieval: embedding providers, vector math and the chunk index."""

from counselgraph.retrieval.index import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_TOP_K,
    BuildStats,
    ChunkIndex,
    DimDriftError,
    EmptyIndexError,
    IndexEntry,
    IndexParseError,
    SearchHit,
    build_index,
    index_from_document,
    index_to_document,
    load_index,
    save_index,
    sparse_overlap,
)
from counselgraph.retrieval.providers import (
    API_KEY_ENV,
    DEFAULT_DIM,
    DEFAULT_RETRIES,
    DEFAULT_TIMEOUT,
    EmbeddingProvider,
    HashEmbeddingProvider,
    ProviderError,
    RemoteEmbeddingProvider,
    call_with_retries,
)
from counselgraph.retrieval.vectors import (
    DimMismatchError,
    VectorError,
    ZeroVectorError,
    as_vector,
    cosine_similarity,
    unit_vector,
)
