"""Grounded draft generation: context assembly, prompts, clients, pipeline."""

from counselgraph.generation.clients import (
    DEFAULT_MAX_OUTPUT_TOKENS,
    DEFAULT_TEMPERATURE,
    GENERATION_API_KEY_ENV,
    ClientError,
    ClientTimeout,
    GenerationClient,
    GenerationParams,
    GenerationResult,
    MockGenerationClient,
    RemoteGenerationClient,
)
from counselgraph.generation.context import (
    RAG_SNIPPET_LIMIT,
    GroundingContext,
    GroundingError,
    GroundingMode,
    Snippet,
    assemble_kg_context,
    assemble_rag_context,
)
from counselgraph.generation.pipeline import (
    DEFAULT_GENERATION_RETRIES,
    DraftResponse,
    draft_to_obj,
    extract_citations,
    generate_draft,
)
from counselgraph.generation.prompts import (
    SYSTEM_PREAMBLE,
    TEMPLATE_IDS,
    PromptBundle,
    UnknownTemplateError,
    load_template,
    render_context_block,
    render_prompt,
)
