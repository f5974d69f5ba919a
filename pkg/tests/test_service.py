import math

import pytest
from fastapi.testclient import TestClient

from rotlandau.service import create_app

WORKED = {
    "M": 1.0,
    "alpha": 0.0,
    "chi": 0.0,
    "B0": 0.0,
    "Omega": 1.0,
    "D": 0.0,
    "a": 0.0,
    "mu": 1.0,
    "tau2": 0.0,
}
WORKED_DIGEST = "39156339077b5f5a0979ba69205c9f3c86e54de6c5884cf5a6f36bfcef06ea59"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_reports_ok(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["version"] == "0.1.0"


class TestSpectrum:
    def test_worked_rows_both_branches(self, client):
        resp = client.post(
            "/spectrum",
            json={"config": WORKED, "n_min": 1, "n_max": 1, "l_min": 0, "l_max": 1, "branch": "both"},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["manifest"]["command"] == "spectrum"
        assert body["manifest"]["config_digest"] == WORKED_DIGEST
        assert body["manifest"]["version"] == "0.1.0"
        rows = body["rows"]
        assert [(r["n"], r["l"], r["branch"]) for r in rows] == [
            (1, 0, "plus"),
            (1, 0, "minus"),
            (1, 1, "plus"),
            (1, 1, "minus"),
        ]
        assert all(r["status"] == "ok" and r["terminated"] is True for r in rows)
        assert abs(rows[0]["energy"] - 4.0) < 1e-12
        assert abs(rows[2]["energy"] - (2.0 - math.sqrt(13.0) / 3.0)) < 1e-12
        assert abs(rows[2]["theta"] - math.sqrt(6.0)) < 1e-12
        assert abs(rows[3]["energy"] - (2.0 + math.sqrt(13.0) / 3.0)) < 1e-12

    def test_default_branch_is_plus(self, client):
        resp = client.post(
            "/spectrum", json={"config": WORKED, "l_min": 1, "l_max": 1}
        )
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 1 and rows[0]["branch"] == "plus"

    def test_zero_coupling_yields_absent_rows(self, client):
        cfg = dict(WORKED, mu=0.0)
        resp = client.post(
            "/spectrum", json={"config": cfg, "l_min": 0, "l_max": 1}
        )
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 2
        for row in rows:
            assert row["branch"] == "-"
            assert row["status"] == "no admissible root"
            assert row["theta"] is None and row["energy"] is None

    def test_rejects_invalid_ranges(self, client):
        resp = client.post(
            "/spectrum", json={"config": WORKED, "n_min": 0, "n_max": 1}
        )
        assert resp.status_code == 422
        resp = client.post(
            "/spectrum", json={"config": WORKED, "n_min": 2, "n_max": 1}
        )
        assert resp.status_code == 422
        assert "n_max" in resp.text

    def test_rejects_unknown_config_key(self, client):
        cfg = dict(WORKED, magnetic_moment=1.0)
        resp = client.post("/spectrum", json={"config": cfg})
        assert resp.status_code == 422

    def test_invalid_physics_maps_to_400(self, client):
        cfg = dict(WORKED, M=-1.0)
        resp = client.post("/spectrum", json={"config": cfg})
        assert resp.status_code == 400
        assert resp.json()["detail"].startswith("M:")


class TestWavefunction:
    def test_sample_layout(self, client):
        resp = client.post(
            "/wavefunction",
            json={"config": WORKED, "n": 1, "l": 1, "r_max": 4.0, "samples": 9},
        )
        assert resp.status_code == 200
        body = resp.json()
        rows = body["rows"]
        assert len(rows) == 9
        assert rows[0]["r"] == 0.0 and rows[0]["f"] == 0.0  # r**gamma zero at origin
        assert rows[-1]["r"] == 4.0
        channel = body["channel"]
        assert channel["gamma"] == 1.0
        assert channel["branch"] == "plus"
        assert channel["norm_squared"] > 0.0
        assert abs(channel["theta"] - math.sqrt(6.0)) < 1e-12

    def test_root_index_out_of_range(self, client):
        resp = client.post(
            "/wavefunction",
            json={"config": WORKED, "n": 1, "l": 1, "root_index": 5},
        )
        assert resp.status_code == 400
        assert "root_index" in resp.json()["detail"]

    def test_second_root_of_deep_level(self, client):
        resp = client.post(
            "/wavefunction",
            json={"config": WORKED, "n": 3, "l": 1, "root_index": 1, "samples": 5},
        )
        assert resp.status_code == 200
        assert resp.json()["channel"]["n"] == 3

    def test_rejects_bad_branch(self, client):
        resp = client.post(
            "/wavefunction",
            json={"config": WORKED, "n": 1, "l": 1, "branch": "both"},
        )
        assert resp.status_code == 422


class TestVerify:
    def test_ground_channel_passes(self, client):
        resp = client.post(
            "/verify",
            json={"config": WORKED, "l_min": 1, "l_max": 1, "grid_n": 1000},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is True
        (report,) = body["rows"]
        assert report["status"] == "ok"
        assert report["lambda_analytic"] == 6.0
        assert report["gap"] < 2.5e-3
        assert report["nodes"] == 1
        assert report["grid"] == {"r_max": 12.0, "N": 1000}

    def test_override_fails_ladder(self, client):
        from rotlandau import allowed_frequencies
        from rotlandau.model import PhysicalConfig

        cfg = PhysicalConfig.from_dict(WORKED)
        line = allowed_frequencies(1, 1, cfg, branches=("minus",))[0]
        resp = client.post(
            "/verify",
            json={
                "config": WORKED,
                "l_min": 1,
                "l_max": 1,
                "grid_n": 1000,
                "omega_override": 1.01 * line.omega,
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is False
        (report,) = body["rows"]
        assert report["status"].startswith("tolerance ladder failed")
        assert report["gap"] > 1e-2

    def test_grid_floor(self, client):
        resp = client.post(
            "/verify", json={"config": WORKED, "l_min": 1, "l_max": 1, "grid_n": 50}
        )
        assert resp.status_code == 422


class TestCoeffs:
    def test_closed_form_values(self, client):
        resp = client.post(
            "/coeffs", json={"gamma": 1.0, "theta": 0.0, "nu": 4.0, "K": 3}
        )
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert [row["k"] for row in rows] == [0, 1, 2, 3]
        assert rows[0]["a"] == 1.0
        assert rows[1]["a"] == 0.0
        assert rows[2]["a"] == -0.5
        assert rows[3]["a"] == 0.0

    def test_request_digest_present(self, client):
        resp = client.post(
            "/coeffs", json={"gamma": 1.0, "theta": 1.0, "nu": 2.0, "K": 5}
        )
        digest = resp.json()["manifest"]["config_digest"]
        assert len(digest) == 64 and all(c in "0123456789abcdef" for c in digest)

    def test_validation_bounds(self, client):
        resp = client.post(
            "/coeffs", json={"gamma": 1.0, "theta": 0.0, "nu": 4.0, "K": 0}
        )
        assert resp.status_code == 422
        resp = client.post(
            "/coeffs", json={"gamma": -1.0, "theta": 0.0, "nu": 4.0, "K": 3}
        )
        assert resp.status_code == 422
