from fastapi.testclient import TestClient

from main import app

client = TestClient(app)

KK41 = {"domain": "K", "codomain": "K", "q": 4, "r": 1}
KK00 = {"domain": "K", "codomain": "K", "q": 0, "r": 0}


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_invariants_for_pair():
    response = client.post("/invariants", json={"f1": KK41, "f2": KK00, "window": 10})
    assert response.status_code == 200
    body = response.json()
    assert body["invariants"]["reidemeister"] == 2
    assert body["diagram"]["wraps"] == [2, 2]
    assert all(flag is not False for flag in body["oracle"]["checks"].values())


def test_root_invariant():
    response = client.post(
        "/invariants",
        json={"f1": {"domain": "T", "codomain": "T", "q": 2, "r": 3}, "root_invariant": True},
    )
    assert response.status_code == 200
    assert response.json()["omega"]["components"] == [2, 3, 1]


def test_invalid_specs_are_unprocessable():
    mixed = {"domain": "T", "codomain": "K", "q": 2, "r": 0}
    assert client.post("/invariants", json={"f1": mixed, "root_invariant": True}).status_code == 422
    torus = {"domain": "T", "codomain": "T", "q": 1, "r": 0}
    assert client.post("/invariants", json={"f1": torus, "f2": KK00}).status_code == 422
    assert client.post("/invariants", json={"f1": torus}).status_code == 422


def test_diagram():
    response = client.post("/diagram", json={"f1": KK00, "root_invariant": True, "raw": True})
    assert response.status_code == 200
    assert response.json()["degenerate"] is True
    minimal = client.post("/diagram", json={"f1": KK00, "root_invariant": True}).json()
    assert minimal["vertical_fibres"] == ["0"]


def test_table():
    response = client.get("/table", params={"combo": "KK", "qmin": 1, "qmax": 6, "rmin": 0, "rmax": 1})
    assert response.status_code == 200
    rows = response.json()
    assert len(rows) == 12
    assert {"q": 4, "r": 1, "R": 2} == {key: rows[7][key] for key in ("q", "r", "R")}


def test_oversized_table():
    response = client.get("/table", params={"qmin": -300, "qmax": 300})
    assert response.status_code == 422
    assert "Refusing" in response.json()["detail"]


def test_omega_group():
    response = client.get("/omega-group/K/T")
    assert response.json() == {
        "domain": "K",
        "codomain": "T",
        "summands": ["0", "Z", "Z2"],
        "rendering": "0 + Z + Z2",
    }
    assert client.get("/omega-group/X/T").status_code == 422


def test_large_pair():
    huge = {"domain": "T", "codomain": "T", "q": 2000000, "r": 3}
    torus = {"domain": "T", "codomain": "T", "q": 0, "r": 0}
    response = client.post("/invariants", json={"f1": huge, "f2": torus})
    assert response.status_code == 200
    assert response.json()["diagram"] is None
    assert response.json()["invariants"]["nielsen"] == 1
    assert client.post("/diagram", json={"f1": huge, "f2": torus}).status_code == 422
