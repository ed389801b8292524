import pytest
from fastapi.testclient import TestClient

from expertpivot.ingest import Document
from expertpivot.matcher import Annotation
from expertpivot.service import create_app, group_expert_hits
from expertpivot.store import (
    Dataset,
    Vocab,
    build_graph,
    evaluate,
    experts_query,
    parse_sparql,
)
from expertpivot.taxonomy import Concept, Taxonomy
from expertpivot.textproc import CleanText

EMPTY = CleanText(sentences=(), char_len=0)


def annotation(doc_id, concept_id):
    return Annotation(doc_id=doc_id, concept_id=concept_id, phrase="p",
                      sentence_index=0, token_span=(0, 1))


@pytest.fixture(scope="module")
def fixture_dataset() -> Dataset:
    taxonomy = Taxonomy(
        concepts={
            "https://c/gp": Concept(id="https://c/gp", pref_label="Gaussian processes"),
            "https://c/sl": Concept(id="https://c/sl", pref_label="Supervised learning"),
        }
    )
    documents = [
        Document(doc_id="wp:Kriging", source="wikipedia", title="Kriging",
                 url="https://w/Kriging", clean=EMPTY),
        Document(doc_id="wp:Artificial intelligence", source="wikipedia",
                 title="Artificial intelligence", url="https://w/AI", clean=EMPTY),
        Document(doc_id="ex:aspi/uid12.html", source="expert", title="ASPI",
                 url="https://r/aspi/uid12.html", clean=EMPTY, team="aspi"),
        Document(doc_id="ex:athena/uid34.html", source="expert", title="ATHENA",
                 url="https://r/athena/uid34.html", clean=EMPTY, team="athena"),
        Document(doc_id="ex:bigs/uid56.html", source="expert", title="BIGS",
                 url="https://r/bigs/uid56.html", clean=EMPTY, team="bigs"),
    ]
    return build_graph(
        [annotation("wp:Kriging", "https://c/gp"),
         annotation("wp:Artificial intelligence", "https://c/sl")],
        [annotation("ex:aspi/uid12.html", "https://c/gp"),
         annotation("ex:athena/uid34.html", "https://c/gp"),
         annotation("ex:bigs/uid56.html", "https://c/gp")],
        documents,
        Taxonomy(concepts=taxonomy.concepts),
    )


@pytest.fixture(scope="module")
def client(fixture_dataset) -> TestClient:
    return TestClient(create_app(fixture_dataset, max_query_bytes=2048))


class TestSparqlEndpoint:
    def test_get_canonical_query_matches_evaluate(self, client, fixture_dataset):
        text = experts_query("Kriging")
        response = client.get("/sparql", params={"query": text})
        assert response.status_code == 200
        body = response.json()
        assert body["head"]["vars"] == ["concept", "label", "team", "doc"]
        rows = evaluate(parse_sparql(text), fixture_dataset)
        assert len(body["results"]["bindings"]) == len(rows) == 3
        for binding, row in zip(body["results"]["bindings"], rows):
            for name, term in row.items():
                assert binding[name]["value"] == term.value

    def test_post_body(self, client):
        response = client.post("/sparql", content=experts_query("Kriging").encode())
        assert response.status_code == 200
        assert len(response.json()["results"]["bindings"]) == 3

    def test_term_types_in_bindings(self, client):
        response = client.get(
            "/sparql", params={"query": 'SELECT ?d ?t WHERE { ?d <http://purl.example/expert-pivot#title> ?t }'}
        )
        binding = response.json()["results"]["bindings"][0]
        assert binding["d"]["type"] == "uri"
        assert binding["t"]["type"] == "literal"

    def test_malformed_iri_is_400(self, client):
        response = client.get("/sparql", params={"query": "SELECT ?s WHERE { ?s <x> ?o }"})
        assert response.status_code == 400
        assert "error" in response.json()

    def test_unsupported_feature_is_400(self, client):
        response = client.get(
            "/sparql",
            params={"query": "SELECT ?s WHERE { ?s <https://x/p> ?o . FILTER(?s) }"},
        )
        assert response.status_code == 400
        assert "unsupported" in response.json()["error"]

    def test_empty_result_is_200(self, client):
        response = client.get(
            "/sparql", params={"query": "SELECT ?s WHERE { ?s <https://none/p> ?o }"}
        )
        assert response.status_code == 200
        assert response.json()["results"]["bindings"] == []

    def test_oversized_query_is_413(self, client):
        huge = "SELECT ?s WHERE { ?s <https://x/p> ?o } # " + "x" * 4096
        assert client.get("/sparql", params={"query": huge}).status_code == 413
        assert client.post("/sparql", content=huge.encode()).status_code == 413

    def test_missing_query_param_is_400(self, client):
        assert client.get("/sparql").status_code == 400


class TestExpertsEndpoint:
    def test_kriging_hit(self, client):
        response = client.get("/experts", params={"title": "Kriging"})
        assert response.status_code == 200
        body = response.json()
        assert body["title"] == "Kriging"
        assert len(body["hits"]) == 1
        hit = body["hits"][0]
        assert hit["label"] == "Gaussian processes"
        assert [t["team"] for t in hit["teams"]] == ["aspi", "athena", "bigs"]
        assert hit["teams"][0]["doc_url"] == "https://r/aspi/uid12.html"

    def test_unknown_title_empty_hits(self, client):
        body = client.get("/experts", params={"title": "No such page"}).json()
        assert body == {"title": "No such page", "hits": []}

    def test_underscores_normalized(self, client):
        body = client.get("/experts", params={"title": "Artificial_intelligence"}).json()
        assert body["title"] == "Artificial intelligence"
        # SL concept has no expert docs, so no hits; absence is a valid answer.
        assert body["hits"] == []

    def test_missing_title_is_400(self, client):
        assert client.get("/experts").status_code == 400

    def test_idempotent(self, client):
        first = client.get("/experts", params={"title": "Kriging"}).json()
        second = client.get("/experts", params={"title": "Kriging"}).json()
        assert first == second

    def test_hits_flatten_back_to_rows(self, fixture_dataset):
        rows = evaluate(parse_sparql(experts_query("Kriging")), fixture_dataset)
        hits = group_expert_hits(rows, fixture_dataset, Vocab())
        flattened = {
            (hit.concept, hit.label, team["team"])
            for hit in hits
            for team in hit.teams
        }
        assert flattened == {
            (r["concept"].value, r["label"].value, r["team"].value) for r in rows
        }


class TestCrossCutting:
    @pytest.mark.parametrize(
        "path,params",
        [
            ("/healthz", {}),
            ("/experts", {"title": "Kriging"}),
            ("/experts", {}),
            ("/sparql", {"query": "SELECT ?s WHERE { ?s <https://x/p> ?o }"}),
            ("/sparql", {"query": "broken ("}),
        ],
    )
    def test_every_response_has_cors_header(self, client, path, params):
        response = client.get(path, params=params)
        assert response.headers["access-control-allow-origin"] == "*"

    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.text == "ok"
