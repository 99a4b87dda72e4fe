"""Read-only HTTP JSON API over a prebuilt analysis snapshot.

All collection payloads are serialized once at startup, so identical requests
against the same snapshot return byte-identical bodies. Every JSON response
carries the snapshot id; the RDF text endpoints carry it in an
``X-Snapshot-Id`` header instead, keeping the documents parseable.
"""

from __future__ import annotations

import json
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, Response

from .analysis import group_comparisons_to_dict
from .search import SearchError, attach_snippets, keyword_search, paragraph_search
from .snapshot import AnalysisSnapshot

DEFAULT_BIND = "127.0.0.1"
DEFAULT_PORT = 8080


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


def _dumps(payload: Any) -> bytes:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def _json_response(body: bytes, status_code: int = 200) -> Response:
    return Response(content=body, status_code=status_code, media_type="application/json")


def _proposal_summary(snapshot: AnalysisSnapshot, proposal) -> dict:
    return {
        "id": proposal.id,
        "title": proposal.title,
        "publisher": proposal.publisher,
        "publisher_type": proposal.publisher_type.value,
        "year": proposal.year,
        "n_items": len(proposal.items),
        "topic_coverage_percent": _sig6(snapshot.coverage_percent(proposal.id)),
    }


def _proposal_detail(snapshot: AnalysisSnapshot, proposal) -> dict:
    detail = _proposal_summary(snapshot, proposal)
    detail["source_url"] = proposal.source_url
    detail["items"] = [
        {"item_id": it.item_id, "title_text": it.title_text, "explanatory_text": it.explanatory_text}
        for it in proposal.items
    ]
    detail["topic_counts"] = {
        name: int(count)
        for name, count in zip(snapshot.topic_matrix.col_ids, snapshot.topic_matrix.row(proposal.id))
    }
    return detail


def _matrix_payload(snapshot: AnalysisSnapshot, granularity: str) -> dict:
    matrix = snapshot.topic_matrix if granularity == "topic" else snapshot.keyword_matrix
    return {
        "snapshot_id": snapshot.snapshot_id,
        "granularity": granularity,
        "columns": list(matrix.col_ids),
        "rows": [
            {"proposal_id": pid, "counts": [int(v) for v in matrix.cells[i]]}
            for i, pid in enumerate(matrix.row_ids)
        ],
    }


def _ranking_payload(snapshot: AnalysisSnapshot, granularity: str) -> dict:
    ranking = snapshot.topic_ranking if granularity == "topic" else snapshot.keyword_ranking
    return {
        "snapshot_id": snapshot.snapshot_id,
        "granularity": granularity,
        "rankings": [
            {"proposal_id": e.proposal_id, "score": e.score, "rank": e.rank} for e in ranking
        ],
    }


def _groups_payload(snapshot: AnalysisSnapshot) -> dict:
    comparisons = group_comparisons_to_dict(snapshot.comparisons)
    for comparison in comparisons:
        for group in comparison["groups"]:
            for key in ("mean", "standard_error", "mean_per_1000_tokens"):
                if group[key] is not None:
                    group[key] = _sig6(group[key])
        for test in comparison["tests"]:
            for key in ("t", "df", "p"):
                if test[key] is not None:
                    test[key] = _sig6(test[key])
    return {"snapshot_id": snapshot.snapshot_id, "topics": comparisons}


def _hit_payload(hit) -> dict:
    score = hit.score
    return {
        "proposal_id": hit.proposal_id,
        "item_id": hit.item_id,
        "score": _sig6(score),
        "snippet": hit.snippet,
    }


def create_app(snapshot: AnalysisSnapshot, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="laip", docs_url=None, redoc_url=None, openapi_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    sid = snapshot.snapshot_id

    def error_body(message: str) -> bytes:
        return _dumps({"snapshot_id": sid, "error": message})

    proposals_body = _dumps(
        {"snapshot_id": sid, "proposals": [_proposal_summary(snapshot, p) for p in snapshot.corpus.proposals]}
    )
    detail_bodies = {p.id: _dumps({"snapshot_id": sid, **_proposal_detail(snapshot, p)}) for p in snapshot.corpus.proposals}
    topics_body = _dumps(
        {
            "snapshot_id": sid,
            "topics": [
                {"name": t.name, "canonicals": [g.canonical for g in t.groups]}
                for t in snapshot.lexicon.topics
            ],
        }
    )
    lexicon_body = _dumps({"snapshot_id": sid, **snapshot.lexicon.to_dict()})
    coverage_bodies = {g: _dumps(_matrix_payload(snapshot, g)) for g in ("topic", "keyword")}
    ranking_bodies = {g: _dumps(_ranking_payload(snapshot, g)) for g in ("topic", "keyword")}
    groups_body = _dumps(_groups_payload(snapshot))

    @app.get("/api/proposals")
    def proposals() -> Response:
        return _json_response(proposals_body)

    @app.get("/api/proposals/{proposal_id}")
    def proposal_detail(proposal_id: str) -> Response:
        body = detail_bodies.get(proposal_id)
        if body is None:
            return _json_response(error_body(f"unknown proposal id {proposal_id!r}"), 404)
        return _json_response(body)

    @app.get("/api/topics")
    def topics() -> Response:
        return _json_response(topics_body)

    @app.get("/api/lexicon")
    def lexicon() -> Response:
        return _json_response(lexicon_body)

    @app.get("/api/coverage")
    def coverage(granularity: str = "topic") -> Response:
        body = coverage_bodies.get(granularity)
        if body is None:
            return _json_response(error_body("granularity must be 'topic' or 'keyword'"), 400)
        return _json_response(body)

    @app.get("/api/rankings")
    def rankings(granularity: str = "topic") -> Response:
        body = ranking_bodies.get(granularity)
        if body is None:
            return _json_response(error_body("granularity must be 'topic' or 'keyword'"), 400)
        return _json_response(body)

    @app.get("/api/groups")
    def groups() -> Response:
        return _json_response(groups_body)

    @app.get("/api/graph.nt")
    def graph_nt() -> Response:
        return PlainTextResponse(snapshot.graph_ntriples, headers={"X-Snapshot-Id": sid})

    @app.get("/api/graph.ttl")
    def graph_ttl() -> Response:
        return PlainTextResponse(snapshot.graph_turtle, headers={"X-Snapshot-Id": sid})

    @app.get("/api/search")
    def search(q: str = "") -> Response:
        hits = keyword_search(
            q, snapshot.corpus, snapshot.lexicon, snapshot.keyword_matrix, records=snapshot.match_records
        )
        body = _dumps({"snapshot_id": sid, "query": q, "hits": [_hit_payload(h) for h in hits]})
        return _json_response(body)

    @app.post("/api/search/paragraph")
    async def search_paragraph(request: Request) -> Response:
        try:
            payload = json.loads(await request.body())
        except json.JSONDecodeError:
            return _json_response(error_body("request body must be JSON"), 400)
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            return _json_response(error_body("body must be an object with a string 'text' field"), 400)
        k = payload.get("k", 10)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            return _json_response(error_body("'k' must be a positive integer"), 400)
        try:
            hits = paragraph_search(payload["text"], snapshot.index, snapshot.table, k=k)
        except SearchError as exc:
            return _json_response(error_body(str(exc)), 400)
        hits = attach_snippets(hits, snapshot.corpus)
        body = _dumps({"snapshot_id": sid, "hits": [_hit_payload(h) for h in hits]})
        return _json_response(body)

    return app


def serve(
    snapshot: AnalysisSnapshot,
    bind_address: str = DEFAULT_BIND,
    port: int = DEFAULT_PORT,
    cors_origins: list[str] | None = None,
) -> None:
    """Run the API until interrupted."""
    import uvicorn

    app = create_app(snapshot, cors_origins=cors_origins)
    uvicorn.run(app, host=bind_address, port=port, log_level="warning")
