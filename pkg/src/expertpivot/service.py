"""Read-only HTTP front-end: raw SPARQL plus the experts convenience
endpoint the page gadget calls.

Every response carries ``Access-Control-Allow-Origin: *`` because the
gadget runs on the wikipedia.org origin. The dataset is loaded once and
never mutated, so concurrent requests need no locking.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .store import (
    BASE_IRI,
    Dataset,
    Iri,
    Literal,
    Query,
    SparqlError,
    Term,
    Vocab,
    evaluate,
    experts_query,
    parse_sparql,
    result_vars,
)

__all__ = ["ExpertHit", "create_app", "encode_results", "group_expert_hits"]

DEFAULT_MAX_QUERY_BYTES = 65536


@dataclass(frozen=True, slots=True)
class ExpertHit:
    """All expert teams found for one concept of a page."""

    concept: str
    label: str
    teams: tuple[dict[str, str], ...]  # {"team": ..., "doc_url": ...}, sorted


def _encode_term(term: Term) -> dict[str, str]:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    return {"type": "literal", "value": term.value}


def encode_results(query: Query, rows: list[dict[str, Term]]) -> dict:
    """SPARQL-results JSON for evaluated rows."""
    variables = list(result_vars(query))
    return {
        "head": {"vars": variables},
        "results": {
            "bindings": [
                {name: _encode_term(row[name]) for name in variables} for row in rows
            ]
        },
    }


def group_expert_hits(
    rows: list[dict[str, Term]], dataset: Dataset, vocab: Vocab
) -> list[ExpertHit]:
    """Group canonical-query rows by concept into ExpertHit objects.

    The query binds the expert document node; its url literal is what the
    gadget links to, so it is resolved here (falling back to the node IRI
    for documents that somehow lack one).
    """
    by_concept: dict[str, tuple[str, set[tuple[str, str]]]] = {}
    for row in rows:
        concept = row["concept"].value
        label = row["label"].value
        team = row["team"].value
        doc = row["doc"]
        url_triples = dataset.match(subject=doc, predicate=vocab.url) if isinstance(doc, Iri) else ()
        doc_url = url_triples[0].object.value if url_triples else doc.value
        _, teams = by_concept.setdefault(concept, (label, set()))
        teams.add((team, doc_url))
    hits = []
    for concept, (label, teams) in by_concept.items():
        hits.append(
            ExpertHit(
                concept=concept,
                label=label,
                teams=tuple(
                    {"team": team, "doc_url": doc_url}
                    for team, doc_url in sorted(teams)
                ),
            )
        )
    hits.sort(key=lambda h: (h.label, h.concept))
    return hits


def create_app(
    dataset: Dataset,
    *,
    base_iri: str = BASE_IRI,
    max_query_bytes: int = DEFAULT_MAX_QUERY_BYTES,
) -> FastAPI:
    """Build the application around one frozen dataset."""
    app = FastAPI(title="expertpivot", docs_url=None, redoc_url=None)
    vocab = Vocab(base_iri)

    @app.middleware("http")
    async def add_cors_header(request: Request, call_next):
        response = await call_next(request)
        response.headers["Access-Control-Allow-Origin"] = "*"
        return response

    def run_query(query_text: str) -> Response:
        if len(query_text.encode("utf-8")) > max_query_bytes:
            return JSONResponse({"error": "query too large"}, status_code=413)
        try:
            query = parse_sparql(query_text)
        except SparqlError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        rows = evaluate(query, dataset)
        return JSONResponse(encode_results(query, rows))

    @app.get("/sparql")
    async def sparql_get(query: str | None = None) -> Response:
        if query is None:
            return JSONResponse({"error": "missing query parameter"}, status_code=400)
        return run_query(query)

    @app.post("/sparql")
    async def sparql_post(request: Request) -> Response:
        body = await request.body()
        if len(body) > max_query_bytes:
            return JSONResponse({"error": "query too large"}, status_code=413)
        return run_query(body.decode("utf-8", errors="replace"))

    @app.get("/experts")
    async def experts(title: str | None = None) -> Response:
        if title is None:
            return JSONResponse({"error": "missing title parameter"}, status_code=400)
        title = title.replace("_", " ")
        query = parse_sparql(experts_query(title, base_iri))
        rows = evaluate(query, dataset)
        hits = group_expert_hits(rows, dataset, vocab)
        return JSONResponse(
            {
                "title": title,
                "hits": [
                    {"concept": h.concept, "label": h.label, "teams": list(h.teams)}
                    for h in hits
                ],
            }
        )

    @app.get("/healthz")
    async def healthz() -> Response:
        return PlainTextResponse("ok")

    return app
