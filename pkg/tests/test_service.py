"""HTTP surface: golden responses, error mapping, verify reports."""

from fastapi.testclient import TestClient

import wittkit.service
from wittkit import __version__
from wittkit.errors import InvariantViolation
from wittkit.service import app

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "name": "wittkit",
                        "version": __version__}


class TestWittLaw:
    def test_reduced_default(self):
        r = client.post("/witt-law", json={})
        assert r.status_code == 200
        body = r.json()
        assert body["p"] == 2 and body["e"] == 2
        assert body["integral"] is False
        assert body["names"] == ["H1", "H2"]
        assert body["text"] == "H1 = X1 + Y1 ; H2 = X1*Y1 + X2 + Y2"
        assert body["components"][0]["text"] == "X1 + Y1"

    def test_integral(self):
        r = client.post("/witt-law", json={"integral": True})
        assert r.status_code == 200
        body = r.json()
        assert body["names"] == ["S1", "S2"]
        assert body["text"] == "S1 = X1 + Y1 ; S2 = -X1*Y1 + X2 + Y2"

    def test_terms_round_structure(self):
        r = client.post("/witt-law", json={"p": 3, "e": 1})
        terms = r.json()["components"][0]["terms"]
        assert {"coeff": 1, "exponents": {"X": [1], "Y": [0], "Z": [0]}} in terms

    def test_composite_p_is_a_client_error(self):
        for p in (4, 9):
            r = client.post("/witt-law", json={"p": p, "e": 2})
            assert r.status_code == 400
            assert "prime" in r.json()["detail"]

    def test_type_errors_are_422(self):
        r = client.post("/witt-law", json={"p": "two"})
        assert r.status_code == 422


class TestIterativity:
    def test_frozen_constants(self):
        r = client.post("/iterativity",
                        json={"law": "witt", "i": [1, 0], "j": [1, 0]})
        assert r.status_code == 200
        body = r.json()
        assert body["law"] == "witt"
        assert body["constants"] == {"0,1": 1}

    def test_additive_binomials(self):
        r = client.post("/iterativity",
                        json={"p": 3, "law": "additive",
                              "i": [1, 0], "j": [1, 0]})
        assert r.json()["constants"] == {"2,0": 2}
        # the same pair one degree up hits a vanishing binomial: C(3,1) = 0
        r = client.post("/iterativity",
                        json={"p": 3, "law": "additive",
                              "i": [1, 0], "j": [2, 0]})
        assert r.json()["constants"] == {}

    def test_multiplicative_needs_length_one(self):
        r = client.post("/iterativity",
                        json={"law": "multiplicative", "i": [1, 0],
                              "j": [1, 0]})
        assert r.status_code == 400

    def test_wrong_index_length(self):
        r = client.post("/iterativity", json={"i": [1], "j": [1, 0]})
        assert r.status_code == 400


class TestApply:
    def test_operator_power(self):
        r = client.post("/apply", json={"operator": "D(1,0)^2",
                                        "poly": "X1*X2"})
        assert r.status_code == 200
        assert r.json()["result"]["text"] == "X1"

    def test_bad_operator_text(self):
        r = client.post("/apply", json={"operator": "D(1,0)*",
                                        "poly": "X1"})
        assert r.status_code == 400


class TestDeltaTable:
    def test_small_table(self):
        r = client.post("/delta-table", json={"max_i": [1, 1],
                                              "max_j": [1, 1]})
        assert r.status_code == 200
        entries = r.json()["entries"]
        assert entries["0,0"] == {"0,0": entries["0,0"]["0,0"]}
        assert entries["0,0"]["0,0"]["text"] == "1"
        assert entries["1,1"]["1,0"]["text"] == "X1^2 + X2"
        # zero entries are dropped from each row
        assert "1,1" not in entries["1,0"]


class TestDecompose:
    def test_rational_pieces(self):
        r = client.post("/decompose", json={"x": "X1^3/(X1 + 1)", "n": 1})
        assert r.status_code == 200
        pieces = r.json()["pieces"]
        assert sorted(pieces) == ["0,0", "1,0"]
        assert pieces["0,0"]["text"] == "X1^2/(X1 + 1)"
        assert pieces["1,0"]["text"] == "X1/(X1 + 1)"

    def test_negative_level_is_422(self):
        r = client.post("/decompose", json={"x": "X1", "n": -1})
        assert r.status_code == 422


class TestDerivePBasis:
    def test_inverse_coordinate(self):
        r = client.post("/derive-pbasis", json={"x": "1/X1", "j": [1, 0],
                                                "n": 3})
        assert r.status_code == 200
        assert r.json()["value"]["text"] == "1/X1^2"

    def test_level_below_index(self):
        r = client.post("/derive-pbasis", json={"x": "X1", "j": [2, 0],
                                                "n": 1})
        assert r.status_code == 400


class TestVerify:
    def test_witt_law_suite(self):
        r = client.post("/verify", json={"suite": "witt-law"})
        assert r.status_code == 200
        body = r.json()
        assert body["all_passed"] is True
        assert len(body["reports"]) == 6
        assert all(rep["wall_ms"] is None for rep in body["reports"])

    def test_timings_opt_in(self):
        r = client.post("/verify", json={"suite": "h5", "timings": True})
        rep = r.json()["reports"][0]
        assert rep["wall_ms"] is not None and rep["wall_ms"] >= 0
        assert rep["verdict"] == "witness-found"

    def test_unknown_suite(self):
        r = client.post("/verify", json={"suite": "nope"})
        assert r.status_code == 400
        assert "unknown suite" in r.json()["detail"]

    def test_invariant_breach_maps_to_500(self, monkeypatch):
        def boom(*a, **k):
            raise InvariantViolation("synthetic breach")
        monkeypatch.setattr(wittkit.service, "run_suite", boom)
        local = TestClient(app, raise_server_exceptions=False)
        r = local.post("/verify", json={"suite": "h5"})
        assert r.status_code == 500
        assert r.json() == {"detail": "synthetic breach"}
