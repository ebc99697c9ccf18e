"""HTTP API conformance: every response body must equal the library call
it forwards to, and the 400/404/413 protocol must hold."""

import json

import pytest
from fastapi.testclient import TestClient

from flowrank import service as service_mod
from flowrank.analytics import histogram, rank
from flowrank.centrality import COUNTERS, METRICS, VARIABLES
from flowrank.projection import percentile_subgraph, to_json_document
from flowrank.service import DEFAULT_LIMIT, MAX_LIMIT, Snapshot, create_app


@pytest.fixture(scope="module")
def client(snapshot):
    return TestClient(create_app(snapshot))


def get_json(client, url, status=200):
    resp = client.get(url)
    assert resp.status_code == status, f"{url} -> {resp.status_code}: {resp.text[:200]}"
    return resp.json()


def assert_error_shape(client, url, status):
    body = get_json(client, url, status)
    assert set(body) == {"error"}
    assert body["error"]["code"] == status
    assert isinstance(body["error"]["message"], str)


# --- /api/meta ---


def test_meta(client, snapshot):
    body = get_json(client, "/api/meta")
    assert body["metrics"] == list(VARIABLES)
    assert body["node_count"] == snapshot.graph.node_count
    assert body["edge_count"] == snapshot.graph.undirected_edge_count
    assert body["config"]["saturation_percentile"] == 95.0
    assert body["config"]["projection_percentile"] == 97.0


# --- /api/ranking ---


def test_ranking_equals_library_call(client, snapshot):
    body = get_json(client, "/api/ranking?metric=cfbetweenness")
    ranked = rank(snapshot.table, "cfbetweenness", 95.0)
    assert body["metric"] == "cfbetweenness"
    assert body["total"] == len(ranked.entries)
    assert body["limit"] == DEFAULT_LIMIT
    assert len(body["entries"]) == min(DEFAULT_LIMIT, len(ranked.entries))
    for got, want in zip(body["entries"], ranked.entries):
        assert got["rank"] == want.rank
        assert got["user_key"] == want.user_key
        assert got["screen_name"] == want.screen_name
        assert got["values"] == want.values
        assert got["saturated"] == want.saturated


def test_ranking_pagination(client):
    page1 = get_json(client, "/api/ranking?metric=degree&limit=10")
    page2 = get_json(client, "/api/ranking?metric=degree&limit=10&offset=10")
    assert [e["rank"] for e in page1["entries"]] == list(range(1, 11))
    assert [e["rank"] for e in page2["entries"]] == list(range(11, 21))
    assert page2["offset"] == 10


def test_ranking_offset_beyond_end(client):
    body = get_json(client, "/api/ranking?metric=degree&offset=999999")
    assert body["entries"] == []


def test_ranking_saturate_zero_disables(client):
    body = get_json(client, "/api/ranking?metric=degree&limit=1&saturate=0")
    assert body["saturation_percentile"] is None
    assert body["entries"][0]["saturated"] == {}


def test_ranking_custom_saturate(client, snapshot):
    body = get_json(client, "/api/ranking?metric=degree&limit=3&saturate=50")
    want = rank(snapshot.table, "degree", 50.0)
    for got, exp in zip(body["entries"], want.entries):
        assert got["saturated"] == exp.saturated


@pytest.mark.parametrize(
    "query,status",
    [
        ("metric=pagerank", 404),
        ("metric=degree&limit=0", 400),
        (f"metric=degree&limit={MAX_LIMIT + 1}", 400),
        ("metric=degree&offset=-1", 400),
        ("metric=degree&saturate=101", 400),
        ("metric=degree&saturate=-5", 400),
        ("metric=degree&limit=abc", 400),   # type error -> validation 400
        ("", 400),                          # metric is required
    ],
)
def test_ranking_error_protocol(client, query, status):
    assert_error_shape(client, f"/api/ranking?{query}", status)


def test_ranking_limit_at_max_is_accepted(client):
    body = get_json(client, f"/api/ranking?metric=degree&limit={MAX_LIMIT}")
    assert body["limit"] == MAX_LIMIT


# --- /api/node ---


def test_node_detail_matches_snapshot(client, snapshot):
    key = snapshot.table.keys[0]
    body = get_json(client, f"/api/node/{key}")
    row = snapshot.table.row(key)
    assert body["user_key"] == key
    assert body["screen_name"] == row["screen_name"]
    for name in METRICS:
        assert body["metrics"][name] == row[name]
    for name in COUNTERS:
        assert body["popularity"][name] == row[name]
    assert body["strength"] == row["strength"]
    neighbors = snapshot.graph.neighbors(key)
    assert [e["neighbor"] for e in body["edges"]] == neighbors
    for e in body["edges"]:
        assert e["flow"] == snapshot.graph.undirected_weight(key, e["neighbor"])
        assert e["screen_name"] == snapshot.graph.node(e["neighbor"]).screen_name


def test_node_unknown_404(client):
    assert_error_shape(client, "/api/node/no_such_user", 404)


# --- /api/subgraph ---


def test_subgraph_equals_library_projection(client, snapshot):
    body = get_json(client, "/api/subgraph?metric=cfbetweenness&percentile=97")
    want = json.loads(to_json_document(
        percentile_subgraph(snapshot.graph, snapshot.table, "cfbetweenness", 97.0)))
    assert body == want


def test_subgraph_default_percentile(client, snapshot):
    body = get_json(client, "/api/subgraph?metric=degree")
    assert body["meta"]["percentile"] == snapshot.projection_percentile


@pytest.mark.parametrize(
    "query,status",
    [
        ("metric=pagerank", 404),
        ("metric=degree&percentile=100", 400),
        ("metric=degree&percentile=-1", 400),
        ("metric=degree&percentile=abc", 400),
    ],
)
def test_subgraph_error_protocol(client, query, status):
    assert_error_shape(client, f"/api/subgraph?{query}", status)


def test_subgraph_413_when_too_large(client, snapshot, monkeypatch):
    monkeypatch.setattr(service_mod, "MAX_SUBGRAPH_NODES", 10)
    assert_error_shape(client, "/api/subgraph?metric=degree&percentile=1", 413)


# --- /api/correlations ---


def test_correlations_endpoint(client, snapshot):
    body = get_json(client, "/api/correlations")
    assert body == json.loads(json.dumps(snapshot.matrix.as_dict()))
    assert body["variables"] == list(VARIABLES)
    # self-correlation of the first variable
    assert body["pearson"][0][0] == 1.0


# --- /api/histogram ---


def test_histogram_endpoint(client, snapshot):
    body = get_json(client, "/api/histogram?variable=degree&bins=10")
    want = histogram(snapshot.table, "degree", 10, False).as_dict()
    assert body == json.loads(json.dumps(want))


def test_histogram_log_bins(client, snapshot):
    body = get_json(client, "/api/histogram?variable=cfbetweenness&bins=10&log=true")
    assert body["log"] is True
    want = histogram(snapshot.table, "cfbetweenness", 10, True).as_dict()
    assert body == json.loads(json.dumps(want))


@pytest.mark.parametrize(
    "query,status",
    [
        ("variable=pagerank", 404),
        ("variable=degree&bins=0", 400),
        ("variable=degree&bins=x", 400),
    ],
)
def test_histogram_error_protocol(client, query, status):
    assert_error_shape(client, f"/api/histogram?{query}", status)


# --- protocol details ---


def test_unknown_path_uses_error_envelope(client):
    assert_error_shape(client, "/api/nope", 404)


def test_cors_header_present(client):
    resp = client.get("/api/meta", headers={"Origin": "http://elsewhere.test"})
    assert resp.headers.get("access-control-allow-origin") == "*"


# --- snapshot behavior ---


def test_snapshot_precomputes_default_projections(snapshot):
    assert set(snapshot.default_projections) == set(METRICS)
    proj = snapshot.projection("degree", snapshot.projection_percentile)
    assert proj is snapshot.default_projections["degree"]


def test_snapshot_caches_custom_projections(snapshot):
    a = snapshot.projection("degree", 42.0)
    b = snapshot.projection("degree", 42.0)
    assert a is b
    assert a.percentile == 42.0


def test_static_mount_serves_dashboard(snapshot, tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>dash</title>")
    app = create_app(snapshot, static_dir=str(tmp_path))
    client = TestClient(app)
    resp = client.get("/")
    assert resp.status_code == 200
    assert "dash" in resp.text
    # API routes take precedence over the static mount
    assert client.get("/api/meta").status_code == 200
