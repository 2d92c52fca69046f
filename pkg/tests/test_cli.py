import csv
import json

import pytest

from entwine.cli import main
from entwine.scenario import CHILD_SU2


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out) if out.strip() else None, err


def test_scenarios_listing(capsys):
    code, out, _ = run(capsys, "scenarios")
    assert code == 0
    assert "adult-su3" in out


def test_info_structured(capsys):
    code, doc, _ = run_json(capsys, "info", "--scenario", "adult-su3")
    assert code == 0
    assert doc["rank"] == 2 and doc["d"] == 8 and doc["d_r"] == 3
    assert doc["c2"] == pytest.approx(4 / 3, abs=1e-10)
    assert len(doc["weights"]) == 3


def test_verify_passes(capsys):
    code, doc, _ = run_json(capsys, "verify", "--algebra", "su3")
    assert code == 0
    assert doc["passed"] is True
    assert doc["jacobi_residual"] <= 1e-12


def test_decompose_su2(capsys):
    code, doc, _ = run_json(capsys, "decompose", "--algebra", "su2", "--tensor", "2", "2")
    assert code == 0
    assert doc["summary"] == "3 + 1"


def test_decompose_adjoint_square(capsys):
    code, doc, _ = run_json(capsys, "decompose", "--algebra", "su3", "--tensor", "8", "8")
    assert code == 0
    assert doc["summary"] == "27 + 10 + 10bar + 8 + 8 + 1"
    assert doc["residual"] <= 1e-8


def test_ask_twice_sticks(tmp_path, capsys):
    snapshot = tmp_path / "session.json"
    code, first, _ = run_json(
        capsys, "ask", "--scenario", "child-su2", "--snapshot", str(snapshot),
        "--seed", "42", "--question", "water",
    )
    assert code == 0
    code, second, _ = run_json(
        capsys, "ask", "--snapshot", str(snapshot), "--question", "water",
    )
    assert code == 0
    assert second["outcome"]["eigenvalue"] == first["outcome"]["eigenvalue"]
    saved = json.loads(snapshot.read_text())
    assert len(saved["history"]) == 2


def test_peek_does_not_mutate(tmp_path, capsys):
    snapshot = tmp_path / "session.json"
    run_json(capsys, "ask", "--scenario", "child-su2", "--snapshot", str(snapshot),
             "--seed", "1", "--question", "cola")
    before = snapshot.read_text()
    code, doc, _ = run_json(capsys, "peek", "--snapshot", str(snapshot),
                            "--question", "water")
    assert code == 0
    probs = [o["probability"] for o in doc["outcomes"]]
    assert probs == pytest.approx([0.5, 0.5], abs=1e-12)
    assert snapshot.read_text() == before


def test_joint_peek_via_repeated_flag(tmp_path, capsys):
    snapshot = tmp_path / "session.json"
    code, doc, _ = run_json(
        capsys, "peek", "--scenario", "adult-su3", "--snapshot", str(snapshot),
        "--seed", "3", "--question", "beer", "--question", "water",
    )
    assert code == 0
    assert len(doc["outcomes"]) == 3
    total = sum(o["probability"] for o in doc["outcomes"])
    assert total == pytest.approx(1.0, abs=1e-10)


def test_evolve_then_ask_flips(tmp_path, capsys):
    doc = dict(CHILD_SU2, initial={"kind": "eigenstate", "question": "cola", "rank": 1})
    scenario_file = tmp_path / "scenario.json"
    scenario_file.write_text(json.dumps(doc))
    snapshot = tmp_path / "session.json"
    code, _, _ = run_json(
        capsys, "evolve", "--file", str(scenario_file), "--snapshot", str(snapshot),
        "--seed", "5", "--question", "apple-juice", "--theta", str(3.14159265358979),
    )
    assert code == 0
    code, result, _ = run_json(capsys, "ask", "--snapshot", str(snapshot),
                               "--question", "cola")
    assert code == 0
    assert result["outcome"]["eigenvalue"] == pytest.approx(-0.5, abs=1e-9)


def test_simulate_report_files(tmp_path, capsys):
    report = tmp_path / "report"
    code, doc, _ = run_json(
        capsys, "simulate", "--scenario", "child-su2",
        "--chain", "cola,apple-juice,cola", "--trials", "5000", "--seed", "7",
        "--report-dir", str(report),
    )
    assert code == 0
    assert sum(c["count"] for c in doc["counts"]) == 5000
    csv_path = report / "outcomes.csv"
    png_path = report / "frequencies.png"
    assert csv_path.exists() and png_path.exists()
    with csv_path.open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0][-2:] == ["count", "frequency"]
    assert sum(int(r[-2]) for r in rows[1:]) == 5000
    assert png_path.stat().st_size > 1000


def test_peek_plot(tmp_path, capsys):
    snapshot = tmp_path / "session.json"
    figure = tmp_path / "dist.png"
    code, doc, _ = run_json(
        capsys, "peek", "--scenario", "adult-su3", "--snapshot", str(snapshot),
        "--seed", "2", "--question", "champagne", "--plot", str(figure),
    )
    assert code == 0
    assert figure.exists() and figure.stat().st_size > 1000


def test_unknown_question_maps_to_error_document(tmp_path, capsys):
    code, out, err = run(
        capsys, "ask", "--scenario", "child-su2", "--snapshot",
        str(tmp_path / "s.json"), "--question", "mead",
    )
    assert code == 1
    assert json.loads(err)["code"] == "UNKNOWN_NAME"


def test_validation_error_exit_code(tmp_path, capsys):
    bad = dict(CHILD_SU2, options={"cola": 9})
    scenario_file = tmp_path / "bad.json"
    scenario_file.write_text(json.dumps(bad))
    code, _, err = run(capsys, "info", "--file", str(scenario_file))
    assert code == 1
    assert json.loads(err)["code"] == "VALIDATION"


def test_same_seed_reproduces_history(tmp_path, capsys):
    fingerprints = []
    for run_dir in ("a", "b"):
        snapshot = tmp_path / f"{run_dir}.json"
        for question in ("cola", "water", "cola"):
            code, _, _ = run_json(
                capsys, "ask", "--scenario", "child-su2", "--snapshot",
                str(snapshot), "--seed", "99", "--question", question,
            )
            assert code == 0
        code, doc, _ = run_json(capsys, "history", "--snapshot", str(snapshot))
        assert code == 0
        fingerprints.append(json.dumps(doc["history"]))
    assert fingerprints[0] == fingerprints[1]
