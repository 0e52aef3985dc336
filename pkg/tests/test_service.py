import pytest
from fastapi.testclient import TestClient

from latdiam.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


HEX_SPEC = {"family": "hexagon_power", "parameters": {"d": 2}, "seed": 0}


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_generate_hexagon(client):
    r = client.post("/generate", json=HEX_SPEC)
    assert r.status_code == 200
    body = r.json()
    assert body["ambient_dim"] == 2 and body["k"] == 2
    assert len(body["points"]) == 6


def test_generate_is_deterministic(client):
    spec = {"family": "random_hull", "parameters": {"n": 2, "k": 3, "budget": 20}, "seed": 9}
    a = client.post("/generate", json=spec).json()
    b = client.post("/generate", json=spec).json()
    assert a == b


def test_generate_rejects_unknown_family(client):
    r = client.post("/generate", json={"family": "orthoplex"})
    assert r.status_code == 422


def test_skeleton_endpoint(client):
    poly = client.post("/generate", json=HEX_SPEC).json()
    r = client.post("/skeleton", json=poly)
    assert r.status_code == 200
    body = r.json()
    assert body["vertex_count"] == 6
    adj = body["adjacency"]
    assert all(len(ns) == 2 for ns in adj)
    for i, ns in enumerate(adj):
        for j in ns:
            assert i in adj[j]
    assert body["dot"].count("--") == 6


def test_diameter_endpoint(client):
    poly = client.post("/generate", json=HEX_SPEC).json()
    r = client.post("/diameter", json=poly)
    body = r.json()
    assert body == {
        "ambient_dim": 2,
        "k": 2,
        "rank": 2,
        "vertex_count": 6,
        "diameter": 3,
        "bound": 3,
        "ko_bound": 4,
        "tight": True,
        "slack": 0,
    }


def test_diameter_rejects_out_of_grid_points(client):
    r = client.post("/diameter", json={"ambient_dim": 2, "k": 1, "points": [[0, 0], [2, 0]]})
    assert r.status_code == 400


def test_half_integral_input(client):
    poly = {
        "ambient_dim": 2,
        "k": 1,
        "points": [["0", "0"], ["1", "0"], ["0", "1"], ["1/2", "1/2"]],
    }
    body = client.post("/diameter", json=poly).json()
    # midpoint is absorbed by the hull; a triangle on the doubled grid remains
    assert body["k"] == 2
    assert body["vertex_count"] == 3
    assert body["diameter"] == 1


def test_path_endpoint(client):
    poly = client.post("/generate", json=HEX_SPEC).json()
    r = client.post("/path", json={"polytope": poly, "source": 0, "target": 5})
    assert r.status_code == 200
    body = r.json()
    assert body["valid"] is True
    cert = body["certificate"]
    assert cert["length"] <= cert["bound"] == 3
    assert cert["length"] >= body["bfs_distance"]
    assert len(cert["path"]) == cert["length"] + 1


def test_path_same_vertex_rejected(client):
    poly = client.post("/generate", json=HEX_SPEC).json()
    r = client.post("/path", json={"polytope": poly, "source": 2, "target": 2})
    assert r.status_code == 400


def test_path_bad_index_rejected(client):
    poly = client.post("/generate", json=HEX_SPEC).json()
    r = client.post("/path", json={"polytope": poly, "source": 0, "target": 99})
    assert r.status_code == 400


def test_verify_endpoint_small_suite(client):
    suite = {
        "seed": 3,
        "hypercube_dims": [1, 2],
        "hexagon_dims": [1, 2],
        "include_octagon": False,
        "matching_graphs": ["path2"],
        "random_count": 3,
        "random_budget": [5, 10],
        "product_pairs": 2,
        "max_pairs_per_instance": 20,
    }
    r = client.post("/verify", json={"suite": suite, "jobs": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["summary"]["violations"] == 0
    assert body["summary"]["instances"] == len(body["rows"]) == 8


def test_verify_rejects_desk_scale_violation(client):
    r = client.post("/verify", json={"suite": {"random_dims": [6]}, "jobs": 1})
    assert r.status_code == 400


def test_suite_schema_matches_runner_spec():
    # The wire model and the runner's dataclass must not drift apart.
    import dataclasses

    from latdiam.experiments import SuiteSpec
    from latdiam.service.schemas import SuiteModel

    model_fields = set(SuiteModel.model_fields)
    spec_fields = {f.name for f in dataclasses.fields(SuiteSpec)}
    assert model_fields == spec_fields
    defaults = SuiteModel().model_dump()
    assert SuiteSpec.from_json(defaults) == SuiteSpec()


def test_matching_polytope_through_full_stack(client):
    spec = {
        "family": "fractional_matching",
        "parameters": {"edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]},
    }
    poly = client.post("/generate", json=spec).json()
    assert len(poly["points"]) == 12
    dia = client.post("/diameter", json=poly).json()
    assert dia["rank"] == 5 and dia["k"] == 2
    assert dia["diameter"] <= dia["bound"] == 7
    path = client.post("/path", json={"polytope": poly, "source": 0, "target": 11}).json()
    assert path["valid"] and path["certificate"]["length"] <= 7
