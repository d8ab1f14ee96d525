import threading

import pytest
from fastapi.testclient import TestClient

from conceptforge.service import create_app
from conceptforge.xmlio import parse_model, serialize_model
from modelgen import supply_model


@pytest.fixture
def model_dir(tmp_path):
    (tmp_path / "supply.cmx").write_text(
        serialize_model(supply_model(with_constants=True)))
    return tmp_path


@pytest.fixture
def client(model_dir):
    return TestClient(create_app(model_dir))


class TestListModels:
    def test_lists_cmx_files(self, client):
        assert client.get("/api/models").json() == [
            {"name": "supply", "version": 1}]

    def test_empty_directory(self, tmp_path):
        client = TestClient(create_app(tmp_path))
        assert client.get("/api/models").json() == []

    def test_sorted_by_name(self, model_dir):
        (model_dir / "alpha.cmx").write_text("<NewDataSet/>")
        client = TestClient(create_app(model_dir))
        names = [m["name"] for m in client.get("/api/models").json()]
        assert names == ["alpha", "supply"]


class TestLoadSave:
    def test_get_envelope(self, client):
        body = client.get("/api/models/supply").json()
        assert body["name"] == "supply" and body["version"] == 1
        ids = [e["id"] for e in body["model"]["elements"]]
        assert ids == sorted(ids) and len(ids) == 17

    def test_get_missing_is_404(self, client):
        assert client.get("/api/models/nope").status_code == 404

    def test_put_bumps_version(self, client):
        envelope = client.get("/api/models/supply").json()
        response = client.put("/api/models/supply", json=envelope)
        assert response.status_code == 200
        assert response.json() == {"version": 2}
        assert client.get("/api/models/supply").json()["version"] == 2

    def test_put_stale_version_is_409(self, client):
        envelope = client.get("/api/models/supply").json()
        assert client.put("/api/models/supply", json=envelope).status_code == 200
        response = client.put("/api/models/supply", json=envelope)
        assert response.status_code == 409
        assert response.json()["version"] == 2

    def test_put_invalid_body_is_400(self, client):
        assert client.put("/api/models/supply",
                          json={"version": 1}).status_code == 400
        assert client.put("/api/models/supply",
                          json={"version": "x", "model": {"elements": []}},
                          ).status_code == 400

    def test_put_persists_canonical_xml(self, client, model_dir):
        envelope = client.get("/api/models/supply").json()
        client.put("/api/models/supply", json=envelope)
        on_disk = (model_dir / "supply.cmx").read_text()
        assert parse_model(on_disk) == supply_model(with_constants=True)

    def test_create_new_model_from_version_zero(self, client, model_dir):
        body = {"version": 0, "model": {"elements": [
            {"id": 1, "type": "Var", "name": "x"}]}}
        response = client.put("/api/models/fresh", json=body)
        assert response.status_code == 200 and response.json()["version"] == 1
        assert (model_dir / "fresh.cmx").exists()

    def test_concurrent_puts_one_wins(self, model_dir):
        app = create_app(model_dir)
        envelope = TestClient(app).get("/api/models/supply").json()
        results = []

        def save():
            with TestClient(app) as c:
                results.append(c.put("/api/models/supply", json=envelope).status_code)

        threads = [threading.Thread(target=save) for _ in range(2)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(results) == [200, 409]


class TestValidationEndpoint:
    def test_valid_model(self, client):
        response = client.post("/api/models/supply/validate")
        assert response.status_code == 200 and response.json() == []

    def test_broken_preview_body(self, client):
        body = {"version": 1, "model": {"elements": [
            {"id": 1, "type": "Var", "name": "x"}]}}
        diags = client.post("/api/models/supply/validate", json=body).json()
        assert [d["code"] for d in diags] == ["UNTYPED_VARIABLE"]

    def test_missing_model_404(self, client):
        assert client.post("/api/models/nope/validate").status_code == 404


class TestCompileEndpoint:
    def test_matches_cli_output(self, client, model_dir, capsys):
        from conceptforge.cli import main

        for target in ("uml", "sql", "svg"):
            response = client.post(f"/api/models/supply/compile?target={target}")
            assert response.status_code == 200
            assert main(["compile", "--target", target,
                         str(model_dir / "supply.cmx")]) == 0
            assert response.text == capsys.readouterr().out

    def test_svg_media_type(self, client):
        response = client.post("/api/models/supply/compile?target=svg")
        assert response.headers["content-type"].startswith("image/svg+xml")

    def test_invalid_model_is_422(self, client):
        body = {"version": 1, "model": {"elements": [
            {"id": 1, "type": "Var", "name": "x"}]}}
        response = client.post("/api/models/supply/compile?target=uml", json=body)
        assert response.status_code == 422
        assert response.json()["diagnostics"]

    def test_unknown_target_is_400(self, client):
        assert client.post(
            "/api/models/supply/compile?target=pdf").status_code == 400

    def test_preview_does_not_persist(self, client, model_dir):
        before = (model_dir / "supply.cmx").read_text()
        body = {"version": 1, "model": {"elements": [
            {"id": 1, "type": "Concept", "name": "A"}]}}
        assert client.post("/api/models/supply/compile?target=uml",
                           json=body).status_code == 200
        assert (model_dir / "supply.cmx").read_text() == before
