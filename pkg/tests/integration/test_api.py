from app.exceptions import NotConverged

DISK = {"type": "ball", "dim": 2, "id": "disk"}


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "healthy"


def test_detailed_health(client):
    response = client.get("/health/detailed")
    assert response.status_code == 200
    checks = response.get_json()["checks"]
    assert checks["geometry"]["status"] == "healthy"
    assert checks["settings"]["threads"] == 2


def test_unknown_route_returns_json(client):
    response = client.get("/neexistuje")
    assert response.status_code == 404
    assert response.get_json()["path"] == "/neexistuje"


# === /api/approximate ===

def test_approximate(client):
    response = client.post("/api/approximate", json={"body": DISK, "eps": 0.05, "method": "bi"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["body"] == "disk"
    assert data["counts"]["vertices"] == len(data["vertices"])
    assert data["hausdorff_est"] <= 0.05 * 1.05


def test_approximate_requires_body(client):
    response = client.post("/api/approximate", json={"eps": 0.05})
    assert response.status_code == 400
    assert response.get_json()["kind"] == "BodySpecError"


def test_approximate_rejects_non_json(client):
    response = client.post("/api/approximate", data="nope", content_type="text/plain")
    assert response.status_code == 400


def test_approximate_rejects_unknown_method(client):
    response = client.post("/api/approximate", json={"body": DISK, "eps": 0.05, "method": "simplex"})
    assert response.status_code == 400


def test_approximate_rejects_large_eps(client):
    response = client.post("/api/approximate", json={"body": DISK, "eps": 0.4})
    assert response.status_code == 400
    assert response.get_json()["kind"] == "EpsilonTooLarge"


def test_approximate_computation_error(client, monkeypatch):
    def fail(*args, **kwargs):
        raise NotConverged("síť nekonverguje")

    monkeypatch.setattr("app.routes.api.approximate", fail)
    response = client.post("/api/approximate", json={"body": DISK, "eps": 0.05})
    assert response.status_code == 422
    assert response.get_json() == {"error": "síť nekonverguje", "kind": "NotConverged"}


# === Další endpointy ===

def test_pack(client):
    response = client.post("/api/pack", json={"body": DISK, "eps": 0.05, "dirs": 64})
    assert response.status_code == 200
    assert response.get_json()["count"] > 0
    assert response.get_json()["passed"] is True


def test_polar_check(client):
    response = client.post("/api/polar-check", json={"body": DISK, "eps": 0.05, "dirs": 4})
    assert response.status_code == 200
    assert response.get_json()["summary"]["directions"] == 4


def test_polar_check_rejects_bad_constant(client):
    response = client.post("/api/polar-check", json={"body": DISK, "eps": 0.05, "c": 0})
    assert response.status_code == 400


def test_verify(client):
    response = client.post("/api/verify", json={"body": DISK, "eps": 0.1, "halfspaces": 200})
    assert response.status_code == 200
    data = response.get_json()
    assert data["passed"] is True
    assert data["steps"]
