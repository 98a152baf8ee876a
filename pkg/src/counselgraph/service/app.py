"""HTTP JSON API under /v1. Thin layer over the engine: request parsing,
error mapping and response shaping only."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from counselgraph.errors import CounselGraphError
from counselgraph.evaluation.ratings import HumanRating, RatingError
from counselgraph.generation.context import GroundingContext, GroundingMode
from counselgraph.generation.pipeline import DraftResponse, draft_to_obj
from counselgraph.kg.query import EmptyQueryError
from counselgraph.service.engine import (
    ChainView,
    Engine,
    QueryOverrides,
    QueryTooLongError,
    UnknownModeError,
    chain_text,
)

# wire names accepted for the two modes
MODE_NAMES = {
    "rag": GroundingMode.RAG_ONLY,
    "kg": GroundingMode.KG_GROUNDED,
}


class QueryBody(BaseModel):
    query: str
    mode: str = "rag"
    k: Optional[int] = None
    model_id: Optional[str] = None
    temperature: Optional[float] = None
    max_output_tokens: Optional[int] = None
    two_stage: bool = False


class ChainsBody(BaseModel):
    query: str
    max_chains: Optional[int] = Field(default=None, ge=1)
    max_chain_length: Optional[int] = Field(default=None, ge=1)


class RatingBody(BaseModel):
    rater_id: str
    model_id: str
    mode: str
    category: str
    value: int


class RatingsBody(BaseModel):
    ratings: List[RatingBody]


def _context_obj(engine: Engine, context: GroundingContext) -> Dict[str, Any]:
    graph = engine.snapshot.graph
    return {
        "mode": "rag" if context.mode == GroundingMode.RAG_ONLY else "kg",
        "snippets": [
            {"marker": s.marker, "chunk_id": s.chunk_id, "text": s.text}
            for s in context.snippets
        ],
        "chains": [
            {
                "marker": f"[C{i}]",
                "node_ids": list(chain.node_ids),
                "labels": [context.labels.get(n, n) for n in chain.node_ids],
                "relations": [k.value for k in chain.relation_kinds],
                "relevance": chain.relevance,
                "text": chain_text(graph, chain),
                "fingerprint": chain.fingerprint(),
            }
            for i, chain in enumerate(context.chains, start=1)
        ],
        "interventions": [
            {
                "intervention_id": s.intervention_id,
                "label": context.labels.get(s.intervention_id, s.intervention_id),
                "addressed_causes": [context.labels.get(n, n) for n in s.addressed_causes],
                "mitigated_effects": [context.labels.get(n, n) for n in s.mitigated_effects],
                "score": s.score,
            }
            for s in context.interventions
        ],
        "general": [
            {
                "intervention_id": s.intervention_id,
                "label": context.labels.get(s.intervention_id, s.intervention_id),
                "score": s.score,
            }
            for s in context.general
        ],
    }


def _chain_view_obj(view: ChainView) -> Dict[str, Any]:
    return {
        "marker": view.marker,
        "node_ids": view.node_ids,
        "labels": view.labels,
        "relations": view.relations,
        "relevance": view.relevance,
        "text": view.text,
        "fingerprint": view.fingerprint,
    }


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="counselgraph", version="1.0")

    def bad_request(exc: Exception) -> HTTPException:
        return HTTPException(status_code=400, detail=str(exc))

    @app.post("/v1/query")
    def post_query(body: QueryBody) -> Dict[str, Any]:
        if body.mode not in MODE_NAMES:
            raise bad_request(UnknownModeError(body.mode))
        overrides = QueryOverrides(
            k=body.k,
            model_id=body.model_id,
            temperature=body.temperature,
            max_output_tokens=body.max_output_tokens,
            two_stage=body.two_stage,
        )
        try:
            draft, context = engine.query(body.query, MODE_NAMES[body.mode], overrides)
        except (EmptyQueryError, QueryTooLongError, UnknownModeError) as exc:
            raise bad_request(exc)
        except CounselGraphError as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        return {"draft": draft_to_obj(draft), "context": _context_obj(engine, context)}

    @app.get("/v1/graph/stats")
    def get_graph_stats() -> Dict[str, Any]:
        stats = engine.graph_stats()
        return {
            "node_count": stats.node_count,
            "edge_count": stats.edge_count,
            "nodes_by_kind": {k.value: v for k, v in stats.nodes_by_kind.items()},
            "edges_by_kind": {k.value: v for k, v in stats.edges_by_kind.items()},
        }

    @app.post("/v1/graph/chains")
    def post_chains(body: ChainsBody) -> Dict[str, Any]:
        try:
            views = engine.chains(
                body.query,
                max_chains=body.max_chains,
                max_chain_length=body.max_chain_length,
            )
        except (EmptyQueryError, QueryTooLongError) as exc:
            raise bad_request(exc)
        return {"chains": [_chain_view_obj(v) for v in views]}

    @app.post("/v1/ratings")
    def post_ratings(body: RatingsBody) -> Dict[str, Any]:
        try:
            ratings = [
                HumanRating(
                    rater_id=r.rater_id,
                    model_id=r.model_id,
                    mode=r.mode,
                    category=r.category,
                    value=r.value,
                )
                for r in body.ratings
            ]
        except RatingError as exc:
            raise bad_request(exc)
        accepted = engine.add_ratings(ratings)
        return {"accepted": accepted}

    @app.get("/v1/reports/comparison")
    def get_comparison() -> Dict[str, Any]:
        return engine.comparison_report()

    @app.get("/v1/health")
    def get_health() -> Dict[str, Any]:
        return engine.health()

    @app.post("/v1/reload")
    def post_reload() -> Dict[str, Any]:
        engine.reload()
        return {"reloaded": True}

    return app
