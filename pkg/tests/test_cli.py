"""Tests for the command line."""

import json

import pytest
from typer.testing import CliRunner

from airline_proration.axioms import EXPECTED, AxiomId
from airline_proration.cli import app, run
from airline_proration.rules import RuleKind

from .conftest import EQUAL_EXPECTED, R3_EXPECTED, WEIGHTED_EXPECTED


def _payload(capsys):
    return json.loads(capsys.readouterr().out)


def test_allocate_weighted(data_dir, capsys):
    assert run(["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "weighted"]) == 0
    payload = _payload(capsys)
    assert payload["rule"] == "weighted"
    allocation = {int(k): v for k, v in payload["allocation"].items()}
    assert allocation == pytest.approx(WEIGHTED_EXPECTED, abs=5e-4)
    assert payload["total"] == pytest.approx(81.0)


def test_allocate_all(data_dir, capsys):
    assert run(["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "all"]) == 0
    allocations = _payload(capsys)["allocations"]
    assert set(allocations) == {"weighted", "equal", "r1", "r2", "r3", "r5"}
    assert {int(k): v for k, v in allocations["equal"].items()} == pytest.approx(EQUAL_EXPECTED)


def test_allocate_table(data_dir, capsys):
    assert run(["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "equal", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "21.500000" in out


def test_allocate_r4_needs_passenger_weights(data_dir, capsys):
    assert run(["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "r4"]) == 1
    assert "per-passenger" in capsys.readouterr().err


def test_allocate_r4_with_passenger_weights(data_dir, tmp_path, capsys):
    problem = json.loads((data_dir / "example2.json").read_text())
    path = tmp_path / "pw.json"
    path.write_text(json.dumps({"passenger_weights": [
        {"id": p["id"], "weights": problem["weights"]} for p in problem["passengers"]
    ]}))
    args = ["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "r4", "--passenger-weights", str(path)]
    assert run(args) == 0
    allocation = {int(k): v for k, v in _payload(capsys)["allocation"].items()}
    assert allocation == pytest.approx(WEIGHTED_EXPECTED, abs=5e-4)


def test_unknown_rule(data_dir, capsys):
    assert run(["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "r9"]) == 1
    assert "unknown rule" in capsys.readouterr().err


def test_validate_reports_violations(tmp_path, data_dir, capsys):
    problem = json.loads((data_dir / "example2.json").read_text())
    problem["passengers"][0]["price"] = -1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(problem))
    assert run(["validate", "--problem", str(path)]) == 1
    payload = _payload(capsys)
    assert not payload["ok"]
    assert payload["violations"][0]["invariant"] == "nonpositive price"


def test_validate_ok(data_dir, capsys):
    assert run(["validate", "--problem", str(data_dir / "example2.json")]) == 0
    assert _payload(capsys) == {"ok": True, "violations": []}


def test_invalid_problem_is_refused(tmp_path, data_dir, capsys):
    problem = json.loads((data_dir / "example2.json").read_text())
    problem["airlines"].append(6)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(problem))
    assert run(["allocate", "--problem", str(path)]) == 1
    assert "airline without flights" in capsys.readouterr().err


def test_infinite_price_is_refused(tmp_path, data_dir, capsys):
    problem = json.loads((data_dir / "example2.json").read_text())
    problem["passengers"][0]["price"] = float("inf")
    path = tmp_path / "inf.json"
    path.write_text(json.dumps(problem))
    assert run(["validate", "--problem", str(path)]) == 1
    assert _payload(capsys)["violations"][0]["invariant"] == "nonpositive price"
    assert run(["allocate", "--problem", str(path)]) == 1
    assert "nonpositive price" in capsys.readouterr().err


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert run(["allocate", "--problem", str(path)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_spf_paper_table_mode(data_dir, capsys):
    args = [
        "spf", "--segments", str(data_dir / "example1_segments.json"),
        "--factors", str(data_dir / "regions.json"), "--paper-table-mode",
    ]
    assert run(args) == 0
    payload = _payload(capsys)
    assert payload["allocation"]["1"] == pytest.approx(192.95, abs=0.01)
    assert payload["allocation"]["2"] == pytest.approx(707.05, abs=0.01)
    assert payload["tpm_allocation"]["1"] == pytest.approx(175.36, abs=0.02)
    assert [r["spf"] for r in payload["trace"]] == [1299, 4760]
    assert payload["atbp"] == 900


def test_spf_atbp_override(data_dir, capsys):
    args = [
        "spf", "--segments", str(data_dir / "example1_segments.json"),
        "--factors", str(data_dir / "regions.json"), "--atbp", "1800",
    ]
    assert run(args) == 0
    payload = _payload(capsys)
    assert sum(payload["allocation"].values()) == pytest.approx(1800, abs=1e-5)


def test_game(data_dir, capsys):
    assert run(["game", "--problem", str(data_dir / "example2.json")]) == 0
    payload = _payload(capsys)
    assert {int(k): v for k, v in payload["shapley"].items()} == pytest.approx(R3_EXPECTED)
    assert payload["equals_r3"] and payload["convex"] and payload["shapley_in_core"]
    assert payload["convexity_witness"] is None


def test_audit_single_cell(capsys):
    args = ["audit", "--rule", "r2", "--axiom", "null_airline", "--trials", "30", "--seed", "0"]
    assert run(args) == 0
    payload = _payload(capsys)
    assert payload["failures"] > 0
    assert payload["witness"]["axiom"] == "null_airline"


def test_audit_is_reproducible(capsys):
    args = ["audit", "--rule", "r3", "--axiom", "ind_other_airlines", "--trials", "20", "--seed", "4"]
    run(args)
    first = capsys.readouterr().out
    run(args)
    assert capsys.readouterr().out == first


def test_audit_matrix_subset(capsys):
    assert run(["audit", "--rule", "equal", "--trials", "5", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "additivity" in out and "pairwise_homogeneity" in out


def test_audit_unknown_axiom(capsys):
    assert run(["audit", "--axiom", "symmetry"]) == 1
    assert "unknown axiom" in capsys.readouterr().err


def test_cli_runner_allocate(data_dir):
    result = CliRunner().invoke(app, ["allocate", "--problem", str(data_dir / "example2.json"), "--rule", "equal"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert {int(k): v for k, v in payload["allocation"].items()} == pytest.approx(EQUAL_EXPECTED)


def test_no_arguments_shows_help(capsys):
    run([])
    captured = capsys.readouterr()
    assert "allocate" in captured.out + captured.err


def test_audit_defect_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(EXPECTED["r2"], AxiomId.NULL_AIRLINE, True)
    args = ["audit", "--rule", "r2", "--axiom", "null_airline", "--trials", "30", "--seed", "0"]
    assert run(args) == 2
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["failures"] > 0
    assert payload["witness"]["axiom"] == "null_airline"
    assert "defect: r2 fails null_airline" in captured.err


def test_audit_all_covers_the_matrix(capsys):
    assert run(["audit", "--all", "--trials", "5", "--seed", "0"]) == 0
    payload = _payload(capsys)
    rules = [k.value for k in RuleKind]
    axioms = [a.value for a in AxiomId]
    assert len(payload["reports"]) == len(rules) * len(axioms)
    assert {(r["rule"], r["axiom"]) for r in payload["reports"]} == {(r, a) for r in rules for a in axioms}
    assert sorted(payload["table"]) == sorted(rules)
    assert all(sorted(column) == sorted(axioms) for column in payload["table"].values())
