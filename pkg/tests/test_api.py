"""
Testes da API HTTP com o cliente em processo
"""
from app.core.config import settings

WORKBENCH = f"{settings.API_V1_PREFIX}/workbench"


class TestRootAndHealth:
    def test_root(self, client):
        response = client.get("/")
        assert response.status_code == 200
        data = response.json()
        assert data["service"] == settings.APP_NAME
        assert "survey" in data["endpoints"]

    def test_hello_removed(self, client):
        assert client.get("/hello").status_code == 404

    def test_request_id_header(self, client):
        assert "X-Request-ID" in client.get("/").headers

    def test_health(self, client):
        response = client.get("/health/")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_ready(self, client):
        response = client.get("/health/ready")
        assert response.status_code == 200
        assert response.json()["checks"]["engine"] == "ok"

    def test_live(self, client):
        assert client.get("/health/live").json()["status"] == "alive"

    def test_metrics(self, client):
        data = client.get("/health/metrics").json()
        assert data["engine"]["mem_budget"] == settings.MEM_BUDGET

    def test_docs(self, client):
        assert client.get("/docs").status_code == 200


class TestWorkbench:
    def test_eval(self, client):
        response = client.post(f"{WORKBENCH}/eval", json={"expr": "(A+A)/(A+A)", "sets": {"A": [1, 2]}})
        assert response.status_code == 200
        data = response.json()
        assert data["size"] == 7
        assert data["expression"] == "((A+A)/(A+A))"
        assert "3/4" in data["elements"]

    def test_eval_rational_text(self, client):
        response = client.post(f"{WORKBENCH}/eval", json={"expr": "A*A", "sets": {"A": ["-1/2", "3"]}})
        assert response.json()["elements"] == ["-3/2", "1/4", "9"]

    def test_energy(self, client):
        response = client.post(f"{WORKBENCH}/energy", json={"elements": [0, 1], "brute": True})
        data = response.json()
        assert (data["energy"], data["brute_energy"], data["agrees"]) == (10, 10, True)

    def test_verify(self, client):
        response = client.post(f"{WORKBENCH}/verify", json={"suite": "ungar", "n": 5})
        data = response.json()
        assert data["all_hold"] is True
        assert all(check["name"] == "ungar" for check in data["checks"])

    def test_construct(self, client):
        response = client.post(f"{WORKBENCH}/construct", json={"kind": "geometric", "n": 3, "ratio": "2"})
        assert response.json()["elements"] == ["2", "4", "8"]

    def test_sunit(self, client):
        body = {"elements": list(range(1, 11)), "generators": ["2"], "source": "1", "k": 1}
        data = client.post(f"{WORKBENCH}/sunit", json=body).json()
        assert data["ordered_pairs"] == 50
        assert data["paths"]["total"] == 4

    def test_incidence(self, client):
        body = {"A": [1, 2], "B": [0, 1], "C": [0, 1]}
        data = client.post(f"{WORKBENCH}/incidence", json=body).json()
        assert data["incidences"] == 8
        assert data["check"]["holds"] is True

    def test_probe(self, client):
        data = client.post(f"{WORKBENCH}/probe", json={"elements": [1, 2, 3, 4]}).json()
        assert data["card_sumset"] == 7
        assert data["doubling"] == "7/4"

    def test_survey(self, client, tmp_path):
        body = {"families": [{"kind": "interval", "n": 2}], "output": str(tmp_path / "nunca.csv")}
        data = client.post(f"{WORKBENCH}/survey", json=body).json()
        assert data["rows"][0]["card_ratio_of_sumsets"] == 7
        assert data["all_hard_checks_pass"] is True
        assert not (tmp_path / "nunca.csv").exists()


class TestErrors:
    def test_syntax_error(self, client):
        response = client.post(f"{WORKBENCH}/eval", json={"expr": "A+", "sets": {"A": [1]}})
        assert response.status_code == 422
        data = response.json()
        assert data["error"] == "EXPRESSION_SYNTAX"
        assert data["details"]["position"] == 2
        assert "request_id" in data

    def test_capacity(self, client):
        body = {"elements": [1], "generators": ["2"], "source": "1", "k": 12}
        data = client.post(f"{WORKBENCH}/sunit", json=body).json()
        assert data["error"] == "CAPACITY_EXCEEDED"

    def test_precondition(self, client):
        response = client.post(f"{WORKBENCH}/incidence", json={"A": [0], "B": [1], "C": [1]})
        assert response.status_code == 422
        assert response.json()["error"] == "PRECONDITION_FAILED"

    def test_malformed_rational(self, client):
        response = client.post(f"{WORKBENCH}/energy", json={"elements": ["1/0"]})
        assert response.status_code == 422
        assert response.json()["error"] == "VALIDATION_ERROR"

    def test_invalid_set_name(self, client):
        response = client.post(f"{WORKBENCH}/eval", json={"expr": "A", "sets": {"1A": [1]}})
        assert response.status_code == 422
        assert response.json()["error"] == "VALIDATION_ERROR"
