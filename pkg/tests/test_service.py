"""HTTP layer: every endpoint, error mapping, serialization round trips."""

import pytest
from fastapi.testclient import TestClient

from gkzseries.schemas import document_to_series, series_to_document
from gkzseries.series import phi_series
from gkzseries.service import create_app

from conftest import CONIC, CURVE, SQUARE


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def post(client, path, problem, **extra):
    payload = {"problem": problem}
    payload.update(extra)
    return client.post(path, json=payload)


def test_lattice_endpoint(client):
    resp = post(client, "/v1/lattice", CONIC)
    assert resp.status_code == 200
    body = resp.json()
    assert body["n"] == 3 and body["d"] == 2
    assert body["basis"] == [[1, -2, 1]]
    assert len(body["dual_rows"]) == 3


def test_toric_endpoint(client):
    resp = post(client, "/v1/toric", SQUARE)
    assert resp.status_code == 200
    body = resp.json()
    assert body["saturated"] is True
    displays = sorted(g["display"] for g in body["generators"])
    assert displays == ["d1*d3 - d5^2", "d2*d4 - d5^2"]


def test_groebner_endpoint(client):
    resp = post(client, "/v1/groebner", CURVE)
    assert resp.status_code == 200
    body = resp.json()
    dirs = [tuple(g["direction"]) for g in body["elements"]]
    assert sorted(dirs) == [(0, 1, -3, 2), (1, -2, 2, -1), (1, -1, -1, 1),
                            (2, -3, 1, 0)]
    assert body["weight"] == ["3", "0", "0", "1"]


def test_standard_pairs_endpoint(client):
    resp = post(client, "/v1/standard-pairs", CURVE)
    assert resp.status_code == 200
    displays = sorted(p["display"] for p in resp.json()["pairs"])
    assert displays == ["(*,*,0,0)", "(0,*,*,0)", "(0,*,*,1)", "(0,0,*,*)",
                        "(1,*,1,0)"]


def test_fake_exponents_endpoint(client):
    resp = post(client, "/v1/fake-exponents", CURVE)
    assert resp.status_code == 200
    body = resp.json()
    assert body["count"] == 5
    by_v = {tuple(e["v"]): e for e in body["exponents"]}
    assert ("0", "-5/2", "1/2", "0") in by_v
    frac = by_v[("0", "-5/2", "1/2", "0")]
    assert frac["minimal_negative_support"] == "certified"
    first = by_v[("-1", "-1", "0", "0")]
    assert first["minimal_negative_support"] == "no"
    assert first["minimal_witness"] == [2, -3, 1, 0]
    assert first["smallest_weight_in_class"] is True


def test_ns_classes_endpoint(client):
    resp = post(client, "/v1/ns-classes", CURVE, exponent=[-1, -1, 0, 0])
    assert resp.status_code == 200
    body = resp.json()["classifications"][0]
    assert body["positive"] == [[2], [3], [1, 2], [2, 3]]
    assert body["base_support"] == [1, 2]
    assert body["min_support_size"] == 1
    assert body["min_crossing_size"] == 2
    assert body["derivative_bound"] == 1
    assert body["multiplicity_lower_bound"] is None
    assert body["all_certified"] is True


def test_ns_classes_lists_every_exponent_by_default(client):
    resp = post(client, "/v1/ns-classes", SQUARE)
    assert resp.status_code == 200
    classifications = resp.json()["classifications"]
    assert len(classifications) == 1
    body = classifications[0]
    assert body["v"] == ["0", "0", "0", "0", "1"]
    assert body["multiplicity_lower_bound"] == 3
    both = post(client, "/v1/ns-classes", CONIC, exponent=[0, 12, -2])
    assert len(both.json()["classifications"]) == 1
    every = post(client, "/v1/ns-classes", CURVE)
    assert len(every.json()["classifications"]) == 5


def test_series_endpoints_need_selector_when_ambiguous(client):
    resp = post(client, "/v1/phi", CONIC)
    assert resp.status_code == 422
    body = resp.json()["error"]
    assert body["code"] == "unknown-exponent"
    assert body.get("detail")


def test_ns_classes_with_restriction(client):
    resp = post(client, "/v1/ns-classes", CONIC, exponent=[2, 8, 0],
                restrict=[[]])
    assert resp.status_code == 200
    body = resp.json()["classifications"][0]
    assert body["positive"] == [[]]
    assert body["min_crossing_size"] == 1
    assert body["restricted"] is True


def test_phi_endpoint_minimal(client):
    resp = post(client, "/v1/phi", CONIC, exponent=[2, 8, 0])
    assert resp.status_code == 200
    body = resp.json()
    doc = body["series"]
    assert doc["starting_monomial"] == "x1^2*x2^8"
    assert doc["term_count"] == 5
    coeffs = {tuple(t["u"]): t["log_poly"] for t in doc["terms"]}
    assert coeffs[(1,)] == [{"exponents": [], "coefficient": "56/3"}]


def test_phi_endpoint_rejects_nonminimal_without_flag(client):
    resp = post(client, "/v1/phi", CONIC, exponent=[0, 12, -2])
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "input-invalid"
    allowed = post(client, "/v1/phi", CONIC, exponent=[0, 12, -2],
                   allow_nonminimal=True)
    assert allowed.status_code == 200
    assert allowed.json()["series"]["warnings"]


def test_frobenius1_endpoint(client):
    resp = post(client, "/v1/frobenius1", CONIC, exponent=[0, 12, -2],
                b=[1, -2, 1], j=1)
    assert resp.status_code == 200
    body = resp.json()
    assert body["method"] == "frobenius1"
    assert body["parameters"]["j"] == 1
    doc = body["series"]
    assert doc["max_log_degree"] == 1
    assert doc["starting_monomial"] == "x2^12*x3^-2"
    assert doc["complete"] is True


def test_frobenius1_endpoint_uses_declared_direction(client):
    resp = post(client, "/v1/frobenius1", CONIC, exponent=[0, 12, -2])
    assert resp.status_code == 200
    assert resp.json()["parameters"]["b"] == [1, -2, 1]


def test_frobenius1_combo_endpoint(client):
    resp = post(client, "/v1/frobenius1-combo", CURVE,
                exponent=[-1, -1, 0, 0])
    assert resp.status_code == 200
    body = resp.json()
    assert body["method"] == "frobenius1-combo"
    cert = body["certificate"]
    assert len(cert) == 2
    assert all(entry["value"] == "0" for entry in cert)
    assert body["series"]["max_log_degree"] == 1


def test_frobenius2_endpoint(client):
    resp = post(client, "/v1/frobenius2", SQUARE, p=[1, 1])
    assert resp.status_code == 200
    body = resp.json()
    assert body["method"] == "frobenius2"
    assert body["series"]["max_log_degree"] == 2
    assert body["certificate"] is not None
    assert all(entry["value"] == "0" for entry in body["certificate"])


def test_frobenius2_condition_failure_maps_to_422(client):
    resp = post(client, "/v1/frobenius2", SQUARE, p=[2, 0])
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "condition-not-met"


def test_derivative_order_error_maps_to_422(client):
    resp = post(client, "/v1/frobenius1", CONIC, exponent=[0, 12, -2],
                j=5)
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "derivative-order-out-of-range"


def test_weight_not_generic_maps_to_422(client):
    bad = dict(CONIC)
    bad["w"] = [1, 1, 1]
    resp = post(client, "/v1/groebner", bad)
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "weight-not-generic"


def test_malformed_problem_maps_to_400(client):
    bad = dict(CONIC)
    bad["matrix"] = [[1, 1, 1], [0, 1]]
    resp = post(client, "/v1/lattice", bad)
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"]["code"] == "request-invalid"
    assert body["error"]["detail"]


def test_unknown_field_rejected(client):
    resp = client.post("/v1/lattice", json={"problem": CONIC, "bogus": 1})
    assert resp.status_code == 400


def test_verify_endpoint_round_trip(client):
    made = post(client, "/v1/frobenius2", SQUARE, p=[1, 0])
    assert made.status_code == 200
    doc = made.json()["series"]
    resp = post(client, "/v1/verify", SQUARE, series=doc)
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert body["margin"] == "2"
    assert [op["kind"] for op in body["operators"]] == \
        ["toric", "toric", "homogeneity", "homogeneity", "homogeneity"]
    assert all(op["passed"] for op in body["operators"])


def test_verify_endpoint_rejects_tampered_series(client):
    made = post(client, "/v1/phi", CONIC, exponent=[2, 8, 0])
    doc = made.json()["series"]
    doc["terms"][2]["log_poly"][0]["coefficient"] = "71"
    resp = post(client, "/v1/verify", CONIC, series=doc)
    assert resp.status_code == 200
    assert resp.json()["passed"] is False


def test_arrangement_endpoint(client):
    resp = post(client, "/v1/arrangement", SQUARE)
    assert resp.status_code == 200
    body = resp.json()
    assert body["window"] == 10
    assert body["svg"].startswith("<svg")
    small = post(client, "/v1/arrangement", SQUARE, window=4)
    assert small.json()["window"] == 4
    assert small.json()["svg"] != body["svg"]


def test_arrangement_rejects_wide_kernel(client):
    wide = {"matrix": [[1, 1, 1, 1]], "beta": ["1"], "w": [3, 1, 0, 7]}
    resp = post(client, "/v1/arrangement", wide)
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "input-invalid"


def test_arrangement_rejects_bad_window(client):
    resp = post(client, "/v1/arrangement", SQUARE, window=0)
    assert resp.status_code == 422


def test_document_round_trip_is_exact(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    doc = series_to_document(phi)
    back = document_to_series(doc, conic_pipe.basis)
    assert back.canonical_terms() == phi.canonical_terms()
    assert back.weight_cap_abs == phi.weight_cap_abs
    assert back.complete == phi.complete
    assert series_to_document(back) == doc


def test_problem_options_respected(client):
    shallow = dict(CONIC)
    shallow["options"] = {"radius": 3, "weight_cap": "6"}
    resp = post(client, "/v1/phi", shallow, exponent=[2, 8, 0])
    assert resp.status_code == 200
    doc = resp.json()["series"]
    assert doc["radius"] == 3
    assert doc["weight_cap"] == "6"
    assert doc["term_count"] == 4
