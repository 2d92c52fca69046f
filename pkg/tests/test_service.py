import json

import pytest
from fastapi.testclient import TestClient

from entwine.service import create_app


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def make_session(client, scenario="child-su2", seed=42):
    response = client.post("/sessions", json={"scenario": scenario, "seed": seed})
    assert response.status_code == 200, response.text
    return response.json()


def test_list_scenarios(client):
    doc = client.get("/scenarios").json()
    names = {s["name"] for s in doc["scenarios"]}
    assert {"child-su2", "adult-su3", "two-children-su2"} <= names
    adult = next(s for s in doc["scenarios"] if s["name"] == "adult-su3")
    assert len(adult["options"]) == 8


def test_create_and_fetch_session(client):
    view = make_session(client)
    assert view["seed"] == 42
    again = client.get(f"/sessions/{view['id']}")
    assert again.status_code == 200
    assert again.json()["scenario"] == "child-su2"


def test_repeated_ask_identical(client):
    view = make_session(client)
    url = f"/sessions/{view['id']}/ask"
    first = client.post(url, json={"question": "cola"}).json()
    second = client.post(url, json={"question": "cola"}).json()
    assert first["outcome"]["eigenvalue"] == second["outcome"]["eigenvalue"]
    assert second["distribution_before"]["outcomes"][
        second["outcome"]["outcome_index"]
    ]["probability"] == pytest.approx(1.0, abs=1e-12)


def test_peek_after_certainty_is_even(client):
    view = make_session(client)
    sid = view["id"]
    client.post(f"/sessions/{sid}/ask", json={"question": "cola"})
    dist = client.post(f"/sessions/{sid}/peek", json={"question": "water"}).json()
    probs = [o["probability"] for o in dist["outcomes"]]
    assert probs == pytest.approx([0.5, 0.5], abs=1e-12)


def test_peek_does_not_mutate(client):
    view = make_session(client)
    sid = view["id"]
    before = client.get(f"/sessions/{sid}").json()["state_summary"]
    client.post(f"/sessions/{sid}/peek", json={"question": "water"})
    after = client.get(f"/sessions/{sid}").json()["state_summary"]
    assert before == after
    history = client.get(f"/sessions/{sid}/history").json()["history"]
    assert history == []


def test_ask_distribution_before_matches_peek_exactly(client):
    view = make_session(client, scenario="adult-su3", seed=5)
    sid = view["id"]
    peeked = client.post(
        f"/sessions/{sid}/peek", json={"question": "champagne"}
    ).json()
    asked = client.post(
        f"/sessions/{sid}/ask", json={"question": "champagne"}
    ).json()
    assert asked["distribution_before"]["outcomes"] == peeked["outcomes"]


def test_unknown_session_404(client):
    response = client.get("/sessions/nonexistent")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "UNKNOWN_SESSION"


def test_non_commuting_joint_peek_409(client):
    view = make_session(client)
    response = client.post(
        f"/sessions/{view['id']}/peek",
        json={"questions": ["cola", "apple-juice"]},
    )
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "NON_COMMUTING"


def test_commuting_joint_peek(client):
    view = make_session(client, scenario="adult-su3")
    response = client.post(
        f"/sessions/{view['id']}/peek", json={"questions": ["beer", "water"]}
    )
    assert response.status_code == 200
    doc = response.json()
    assert len(doc["outcomes"]) == 3
    assert sum(o["probability"] for o in doc["outcomes"]) == pytest.approx(
        1.0, abs=1e-10
    )


def test_unknown_question_400(client):
    view = make_session(client)
    response = client.post(f"/sessions/{view['id']}/ask", json={"question": "mead"})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "UNKNOWN_NAME"


def test_missing_body_field_400(client):
    response = client.post("/sessions", json={})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "VALIDATION"


def test_malformed_body_schema_error(client):
    response = client.post(
        "/sessions",
        content="[1,2,3]",
        headers={"content-type": "application/json"},
    )
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "SCHEMA"


def test_evolve_reset_history(client):
    view = make_session(client)
    sid = view["id"]
    client.post(f"/sessions/{sid}/ask", json={"question": "water"})
    client.post(f"/sessions/{sid}/evolve", json={"question": "cola", "theta": 0.7})
    reset = client.post(f"/sessions/{sid}/reset").json()
    state = reset["state_summary"]["amplitudes"]
    assert state == [[pytest.approx(2**-0.5), 0.0], [pytest.approx(2**-0.5), 0.0]]
    history = client.get(f"/sessions/{sid}/history").json()["history"]
    assert [e["kind"] for e in history] == ["ask", "evolve", "reset"]


def test_raw_coefficient_question(client):
    view = make_session(client, scenario="adult-su3")
    response = client.post(
        f"/sessions/{view['id']}/peek",
        json={"question": [0.6, 0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]},
    )
    assert response.status_code == 200


def test_algebra_info(client):
    doc = client.get("/algebra/adult-su3/info").json()
    assert doc["rank"] == 2
    assert doc["c2"] == pytest.approx(4 / 3, abs=1e-10)


def test_decompose_endpoint(client):
    response = client.post(
        "/decompose", json={"algebra": "su3", "factors": ["3", "3"]}
    )
    assert response.status_code == 200
    assert response.json()["summary"] == "6 + 3bar"


def test_sessions_isolated(client):
    a = make_session(client, seed=1)["id"]
    b = make_session(client, seed=2)["id"]
    client.post(f"/sessions/{a}/ask", json={"question": "cola"})
    assert client.get(f"/sessions/{b}/history").json()["history"] == []


def test_status_mapping_covers_every_code():
    from entwine.errors import API_ERROR_CODES
    from entwine.service import STATUS_BY_CODE

    assert set(STATUS_BY_CODE) == set(API_ERROR_CODES)


def test_cors_header_present():
    app = create_app(allow_origins=["http://localhost:5173"])
    with TestClient(app) as client:
        response = client.get(
            "/scenarios", headers={"origin": "http://localhost:5173"}
        )
        assert response.headers.get("access-control-allow-origin") == (
            "http://localhost:5173"
        )


def test_cli_and_http_share_numerics(tmp_path, capsys):
    """Identical inputs produce identical numbers on both front doors."""
    from entwine.cli import main as cli_main

    snapshot = tmp_path / "session.json"
    assert cli_main([
        "ask", "--scenario", "adult-su3", "--snapshot", str(snapshot),
        "--seed", "314", "--question", "champagne", "--format", "structured",
    ]) == 0
    cli_ask = json.loads(capsys.readouterr().out)
    assert cli_main([
        "peek", "--snapshot", str(snapshot), "--question", "water",
        "--format", "structured",
    ]) == 0
    cli_peek = json.loads(capsys.readouterr().out)

    with TestClient(create_app()) as client:
        sid = client.post(
            "/sessions", json={"scenario": "adult-su3", "seed": 314}
        ).json()["id"]
        http_ask = client.post(
            f"/sessions/{sid}/ask", json={"question": "champagne"}
        ).json()
        http_peek = client.post(
            f"/sessions/{sid}/peek", json={"question": "water"}
        ).json()

    assert cli_ask["outcome"] == http_ask["outcome"]
    assert cli_ask["distribution_before"] == http_ask["distribution_before"]
    assert cli_ask["state_summary"] == http_ask["state_summary"]
    assert cli_peek["outcomes"] == http_peek["outcomes"]


def test_snapshot_persistence_across_restart(tmp_path):
    directory = tmp_path / "snaps"
    with TestClient(create_app(snapshot_dir=str(directory))) as client:
        sid = make_session(client, scenario="child-su2", seed=11)["id"]
        client.post(f"/sessions/{sid}/ask", json={"question": "water"})
    assert list(directory.glob("*.json"))

    # uninterrupted reference run
    with TestClient(create_app()) as ref_client:
        ref = make_session(ref_client, scenario="child-su2", seed=11)["id"]
        ref_client.post(f"/sessions/{ref}/ask", json={"question": "water"})
        expected = ref_client.post(
            f"/sessions/{ref}/ask", json={"question": "cola"}
        ).json()

    with TestClient(create_app(snapshot_dir=str(directory))) as client:
        resumed = client.post(
            f"/sessions/{sid}/ask", json={"question": "cola"}
        ).json()
    assert resumed["outcome"] == expected["outcome"]
    assert resumed["state_summary"] == expected["state_summary"]
