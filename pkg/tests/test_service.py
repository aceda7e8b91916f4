"""HTTP service behavior: envelopes, optimistic versioning, parity with the CLI."""

from __future__ import annotations

import json
import shutil
import threading

import pytest
from fastapi.testclient import TestClient

from timelinekit.corpus_io import dumps_canonical, load_corpus, relation_set_to_json
from timelinekit.relgen import generate_relations
from timelinekit.service import create_app

from tests.conftest import FIXTURES


@pytest.fixture()
def corpus_dir(tmp_path):
    target = tmp_path / "mini"
    shutil.copytree(FIXTURES / "mini", target)
    return target


@pytest.fixture()
def client(corpus_dir):
    return TestClient(create_app(corpus_dir))


def test_document_listing_and_fetch(client):
    listed = client.get("/api/documents").json()["documents"]
    assert listed == ["m01", "m02"]
    envelope = client.get("/api/documents/m01").json()
    assert envelope["version"] == 1
    assert envelope["document"]["doc_id"] == "m01"


def test_unknown_document_404(client):
    assert client.get("/api/documents/zzz").status_code == 404
    assert client.post("/api/documents/zzz/relations:generate").status_code == 404


def test_put_requires_current_version(client, corpus_dir):
    envelope = client.get("/api/documents/m01").json()
    doc = envelope["document"]
    doc["title"] = "Edited title"

    stale = client.put("/api/documents/m01", json={"version": 99, "document": doc})
    assert stale.status_code == 409
    on_disk = json.loads((corpus_dir / "documents" / "m01.json").read_text())
    assert on_disk["title"] != "Edited title"

    ok = client.put("/api/documents/m01", json={"version": envelope["version"],
                                                "document": doc})
    assert ok.status_code == 200
    assert ok.json()["version"] == 2
    on_disk = json.loads((corpus_dir / "documents" / "m01.json").read_text())
    assert on_disk["title"] == "Edited title"


def test_put_schema_error_is_422_with_report(client):
    envelope = client.get("/api/documents/m01").json()
    doc = envelope["document"]
    doc["mystery"] = 1
    response = client.put("/api/documents/m01", json={"version": 1, "document": doc})
    assert response.status_code == 422
    body = response.json()
    assert body["errors"][0]["code"] == "E_SCHEMA"


def test_put_validation_error_is_422_with_report(client):
    envelope = client.get("/api/documents/m01").json()
    doc = envelope["document"]
    doc["layers"]["ann1"][0]["answers"]["q1"] = {"answer": "yes", "target": "e999"}
    response = client.put("/api/documents/m01", json={"version": 1, "document": doc})
    assert response.status_code == 422
    codes = {e["code"] for e in response.json()["errors"]}
    assert "E_TARGET_MISSING" in codes


def test_generation_parity_with_library(client, corpus_dir):
    response = client.post("/api/documents/m01/relations:generate?layer=ann1")
    assert response.status_code == 200
    corpus = load_corpus(corpus_dir)
    expected = relation_set_to_json(generate_relations(corpus.documents["m01"], "ann1"))
    assert dumps_canonical(response.json()) == dumps_canonical(expected)


def test_conflicts_endpoint_clean_fixture(client):
    response = client.get("/api/documents/m01/conflicts")
    assert response.status_code == 200
    assert response.json() == {"conflicts": []}


def test_corpus_stats_endpoint(client):
    payload = client.get("/api/corpus/stats").json()
    assert payload["documents"] == 2
    assert payload["possible_pairs"] == 27


def test_iaa_endpoint_requires_params(client):
    assert client.get("/api/iaa").status_code == 400
    assert client.get("/api/iaa?layerA=ann1").status_code == 400


def test_iaa_endpoint_on_dual(tmp_path):
    target = tmp_path / "dual"
    shutil.copytree(FIXTURES / "dual", target)
    client = TestClient(create_app(target))
    payload = client.get("/api/iaa?layerA=ann1&layerB=ann2").json()
    assert payload["kappa"] == 0.8882
    assert payload["relation_micro_f1"] == 93.88


def test_anchor_resolution_wizard(client):
    payload = client.get("/api/anchors:resolve?option=3&dct=2021-02-15").json()
    assert payload == {"anchor": "2021-02-14"}
    payload = client.get("/api/anchors:resolve?option=4&dct=2020-12-31").json()
    assert payload == {"anchor": "2021-01-01"}
    payload = client.get("/api/anchors:resolve?option=2&date=2020-08-XX&dct=2021-02-15").json()
    assert payload == {"anchor": "2020-08-XX"}
    assert client.get("/api/anchors:resolve?option=9&dct=2021-02-15").status_code == 400
    assert client.get("/api/anchors:resolve?option=1&dct=2021-02-15").status_code == 400
    assert client.get("/api/anchors:resolve?option=3&dct=not-a-date").status_code == 400


def test_lint_endpoint(client):
    payload = client.get("/api/documents/m02/lint").json()
    assert any(w["code"] == "W_INTENDED" for w in payload["warnings"])


def test_concurrent_writers_exactly_one_wins(corpus_dir):
    app = create_app(corpus_dir)
    envelope = TestClient(app).get("/api/documents/m01").json()
    doc = envelope["document"]
    results = []

    def write(title):
        body = {"version": envelope["version"],
                "document": {**doc, "title": title}}
        with TestClient(app) as local:
            results.append(local.put("/api/documents/m01", json=body).status_code)

    threads = [threading.Thread(target=write, args=(f"t{i}",)) for i in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(results) == [200, 409]
