import json

import pytest
from fastapi.testclient import TestClient

from contra import cli, posterior, server

K_SERVER = 20_000
SEED = 42


@pytest.fixture(scope="module")
def plaque_client(plaque_path):
    session = server.build_session(str(plaque_path), K_SERVER, SEED)
    return TestClient(server.create_app(session))


@pytest.fixture(scope="module")
def tpc_client(tpc_path):
    session = server.build_session(str(tpc_path), K_SERVER, SEED)
    return TestClient(server.create_app(session))


def test_studies_row_counts(plaque_client, tpc_client):
    assert len(plaque_client.get("/api/studies").json()) == 28
    assert len(tpc_client.get("/api/studies").json()) == 35


def test_studies_records_carry_summary_and_metadata(plaque_client):
    rows = plaque_client.get("/api/studies").json()
    for row in rows:
        for key in cli.RECORD_KEYS:
            assert key in row
        for key in ("study_label", "year", "units", "pmid", "alpha_dm"):
            assert key in row
        assert row["k"] == K_SERVER
        assert row["seed"] == SEED
        # thresholds are chosen per request, never baked into the rows
        assert row["negligible"] is None
        assert row["meaningful"] is None


def test_classify_plaque_reference_set(plaque_client):
    r = plaque_client.post("/api/classify",
                           json={"negligible_threshold": 0.35})
    assert r.status_code == 200
    body = r.json()
    negligible = {d["id"] for d in body["decisions"] if d["negligible"]}
    assert negligible == {1, 2, 3, 4}
    assert all(d["meaningful"] is None for d in body["decisions"])


def test_classify_with_meaningful_threshold(plaque_client):
    r = plaque_client.post("/api/classify", json={
        "negligible_threshold": 0.35, "meaningful_threshold": 0.10})
    assert r.status_code == 200
    for d in r.json()["decisions"]:
        assert isinstance(d["meaningful"], bool)


def test_classify_nonpositive_threshold_400(plaque_client):
    for delta in (0.0, -0.3):
        r = plaque_client.post("/api/classify",
                               json={"negligible_threshold": delta})
        assert r.status_code == 400


def test_classify_missing_field_422(plaque_client):
    r = plaque_client.post("/api/classify", json={})
    assert r.status_code == 422


def test_classify_does_no_sampling(plaque_client):
    before = posterior.sampling_call_count()
    for delta in (0.01, 0.1, 0.2, 0.35, 0.5, 1.0):
        assert plaque_client.post(
            "/api/classify",
            json={"negligible_threshold": delta}).status_code == 200
    assert posterior.sampling_call_count() == before


def test_classify_matches_cli_classify(plaque_client, tmp_path):
    rows = plaque_client.get("/api/studies").json()
    stored = tmp_path / "stored.json"
    stored.write_text(json.dumps(
        [{key: row[key] for key in cli.RECORD_KEYS} for row in rows]))
    for delta in (0.1, 0.35, 0.8):
        out = tmp_path / "out.json"
        assert cli.main(["classify", str(stored),
                         "--threshold-negligible", str(delta),
                         "--out-json", str(out)]) == cli.EXIT_OK
        cli_neg = {r["id"] for r in json.loads(out.read_text()) if r["negligible"]}
        api = plaque_client.post("/api/classify",
                                 json={"negligible_threshold": delta}).json()
        assert {d["id"] for d in api["decisions"] if d["negligible"]} == cli_neg


def test_plot_svg_content_type(plaque_client):
    r = plaque_client.get("/api/plot.svg")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("image/svg+xml")
    assert r.text.startswith("<svg")


def test_plot_band_only_with_threshold(plaque_client):
    plain = plaque_client.get("/api/plot.svg").text
    banded = plaque_client.get("/api/plot.svg?negligible_threshold=0.35").text
    assert "#d9d9d9" not in plain
    assert "#d9d9d9" in banded


def test_plot_malformed_query_400(plaque_client):
    for query in ("negligible_threshold=abc", "negligible_threshold=0",
                  "negligible_threshold=-1", "meaningful_threshold=xyz"):
        assert plaque_client.get(f"/api/plot.svg?{query}").status_code == 400


def test_plot_deterministic(plaque_client):
    a = plaque_client.get("/api/plot.svg?negligible_threshold=0.35").text
    b = plaque_client.get("/api/plot.svg?negligible_threshold=0.35").text
    assert a == b


def test_empty_session_plot_400():
    client = TestClient(server.create_app(
        server.build_session(None, K_SERVER, SEED)))
    assert client.get("/api/studies").json() == []
    assert client.get("/api/plot.svg").status_code == 400


def test_studies_center_out_order_matches_plotting(plaque_client, plaque_path):
    from contra import ingest, plotting
    studies = ingest.load_studies_file(str(plaque_path))
    summaries = cli.summarize_all(studies, K_SERVER, SEED)
    expected = [s.id for s, _ in
                plotting.sort_studies(list(zip(studies, summaries)))]
    got = [row["id"] for row in plaque_client.get("/api/studies").json()]
    assert got == expected
