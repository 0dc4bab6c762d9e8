import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_normalize(client):
    response = client.post("/api/v1/weil/normalize", json={"text": "x2*x1 + x1*x2", "ambient": "W@W"})
    assert response.status_code == 200
    body = response.json()
    assert body["kind"] == "element"
    assert body["text"] == "2*x1*x2"
    assert body["value"] == [{"mono": [1, 2], "coef": 2}]


def test_dsl_errors_are_bad_requests(client):
    response = client.post(
        "/api/v1/weil/check-hom", json={"morphism": "[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }"}
    )
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["kind"] == "duplicate"
    assert detail["position"] == {"line": 1, "column": 26, "offset": 25}


def test_check_hom_and_compose(client):
    response = client.post("/api/v1/weil/check-hom", json={"morphism": "[W^2 -> W@W]{ x1 -> x1 ; x2 -> x2 }"})
    assert response.json()["ok"] is False
    assert response.json()["witness"] == [1, 2]
    response = client.post(
        "/api/v1/weil/compose",
        json={"psi": "[W@W -> W]{ x1 -> x1 ; x2 -> x1 }", "phi": "[W -> W@W]{ x1 -> x1*x2 }"},
    )
    assert response.json()["text"] == "[W -> W]{ x1 -> 0 }"


def test_lift(client):
    response = client.post(
        "/api/v1/limits/lift",
        json={
            "square": {"kind": "vertical"},
            "right": "[W -> W@W]{ x1 -> x1*x2 + 2*x2 }",
            "bottom": "[W -> N]{ x1 -> 0 }",
        },
    )
    assert response.status_code == 200
    assert response.json()["text"] == "[W -> W^2]{ x1 -> x1 + 2*x2 }"
    assert response.json()["lift"]["tgt"] == {"widths": [2]}


def test_verify_pullback(client):
    response = client.post(
        "/api/v1/limits/verify",
        json={"square": {"kind": "foundational", "algebra": "W^2", "m": 1, "n": 1}, "seed": 2, "cones": 10},
    )
    body = response.json()
    assert body["passed"] is True
    assert body["cones_checked"] == 10
    assert body["certificate"]["holds"] is True


def test_phitilde_and_alpha(client):
    response = client.post("/api/v1/spaces/phitilde", json={"morphism": "[W -> W@W]{ x1 -> x1*x2 }"})
    assert response.json()["text"] == "W@W | X1^X2"
    assert response.json()["components"] == [[[1, 2]]]
    response = client.post(
        "/api/v1/spaces/alpha",
        json={"phi1": "[W -> W@W]{ x1 -> x1*x2 }", "phi2": "[W@W -> W]{ x1 -> x1 ; x2 -> x1 }"},
    )
    assert response.json()["zeta"] == ["X1^X1"]
    assert response.json()["passed"] is True


def test_structure_maps(client):
    response = client.post("/api/v1/tangent/structure-maps", json={"instance": "nmod", "object": "N^1"})
    assert response.status_code == 200
    assert response.json()["maps"]["l"] == [[1, 0], [0, 0], [0, 0], [0, 1]]
    response = client.post("/api/v1/tangent/structure-maps", json={"instance": "smooth"})
    assert response.status_code == 400


def test_diffobj(client):
    response = client.post("/api/v1/tangent/diffobj", json={"rank": 1, "phat": [[0, 2]]})
    body = response.json()
    assert body["passed"] is False
    assert {failure["law"] for failure in body["laws"]["failures"]} == {"p^T(p^)l = p^", "pair.invertible"}


def test_derivative(client):
    response = client.post("/api/v1/tangent/derivative", json={"f": [[1, 2], [0, 3]], "g": [[1, 1]]})
    body = response.json()
    assert body["derivative"] == [[0, 0, 1, 2], [0, 0, 0, 3]]
    assert body["passed"] is True
    response = client.post("/api/v1/tangent/derivative", json={"f": [[-1]]})
    assert response.status_code == 400
    response = client.post("/api/v1/tangent/derivative", json={"f": [[1.5], [True]]})
    assert response.status_code == 422
