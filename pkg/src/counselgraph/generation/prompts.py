"""Prompt rendering from a grounding context and a query.

Templates are plain-text data files with {{context}} and {{query}}
placeholders. Rendering is a pure function: equal inputs give byte-equal
output, which the golden tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List

from counselgraph.errors import CounselGraphError
from counselgraph.generation.context import GroundingContext

TEMPLATE_IDS = ("rag_v1", "kg_v1")

# Non-diagnostic, supportive framing. The assistant drafts material for a
# trained para-counselor; it never diagnoses or prescribes.
SYSTEM_PREAMBLE = (
    "You support a para-counselor who works with clients living in poverty. "
    "Draft warm, practical, non-diagnostic guidance the counselor can adapt. "
    "Do not diagnose, do not prescribe medication, and suggest professional "
    "referral when the situation sounds unsafe."
)


class UnknownTemplateError(CounselGraphError):
    def __init__(self, template_id: str):
        super().__init__(
            f"unknown template {template_id!r}; known: {', '.join(TEMPLATE_IDS)}"
        )
        self.template_id = template_id


@dataclass
class PromptBundle:
    template_id: str
    mode: str
    system: str
    text: str
    snippet_markers: Dict[str, str] = field(default_factory=dict)  # marker -> chunk id
    chain_markers: Dict[str, str] = field(default_factory=dict)  # marker -> fingerprint


def load_template(template_id: str) -> str:
    if template_id not in TEMPLATE_IDS:
        raise UnknownTemplateError(template_id)
    return (
        resources.files("counselgraph.generation")
        .joinpath("templates", f"{template_id}.txt")
        .read_text(encoding="utf-8")
    )


def _chain_text(context: GroundingContext, chain) -> str:
    parts = [context.labels.get(chain.node_ids[0], chain.node_ids[0])]
    for kind, node_id in zip(chain.relation_kinds, chain.node_ids[1:]):
        parts.append(f"--{kind.value}--> {context.labels.get(node_id, node_id)}")
    return " ".join(parts)


def _label(context: GroundingContext, node_id: str) -> str:
    return context.labels.get(node_id, node_id)


def render_context_block(context: GroundingContext) -> "tuple[str, Dict[str, str], Dict[str, str]]":
    """Returns (block text, snippet marker map, chain marker map)."""
    lines: List[str] = []
    snippet_markers: Dict[str, str] = {}
    chain_markers: Dict[str, str] = {}

    if context.snippets:
        lines.append("Case snippets:")
        for snippet in context.snippets:
            lines.append(f"{snippet.marker} {snippet.text}")
            snippet_markers[snippet.marker] = snippet.chunk_id
        lines.append("")

    if context.chains:
        lines.append("Causal chains:")
        for i, chain in enumerate(context.chains, start=1):
            marker = f"[C{i}]"
            lines.append(f"{marker} {_chain_text(context, chain)}")
            chain_markers[marker] = chain.fingerprint()
        lines.append("")

    if context.interventions:
        lines.append("Interventions matched to the situation:")
        for suggestion in context.interventions:
            targets = [_label(context, t) for t in suggestion.addressed_causes]
            targets += [_label(context, t) for t in suggestion.mitigated_effects]
            suffix = f" (helps with: {', '.join(targets)})" if targets else ""
            lines.append(f"- {_label(context, suggestion.intervention_id)}{suffix}")
        lines.append("")

    if context.general:
        lines.append("Generally effective interventions:")
        for suggestion in context.general:
            lines.append(f"- {_label(context, suggestion.intervention_id)}")
        lines.append("")

    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines), snippet_markers, chain_markers


def render_prompt(context: GroundingContext, query: str, template_id: str) -> PromptBundle:
    template = load_template(template_id)
    block, snippet_markers, chain_markers = render_context_block(context)
    text = template.replace("{{context}}", block).replace("{{query}}", query)
    return PromptBundle(
        template_id=template_id,
        mode=context.mode,
        system=SYSTEM_PREAMBLE,
        text=text,
        snippet_markers=snippet_markers,
        chain_markers=chain_markers,
    )
