"""Tests for the JSON codecs and payload rendering."""

import json

import pytest

from airline_proration.axioms import AxiomId, TrialConfig, audit
from airline_proration.exceptions import InputError
from airline_proration.model import Edge
from airline_proration.utils.serialization import (
    dumps_payload,
    encode_value,
    load_factor_table,
    load_json,
    load_passenger_weights,
    load_problem,
    load_segments,
    problem_from_dict,
    problem_to_dict,
    report_to_dict,
)

from .conftest import fk


def test_example_file_matches_fixture(data_dir, example_problem):
    assert load_problem(data_dir / "example2.json") == example_problem


def test_problem_round_trip(example_problem):
    assert problem_from_dict(problem_to_dict(example_problem)) == example_problem


def test_weight_file_replaces_weights(data_dir, tmp_path, example_problem):
    path = tmp_path / "weights.json"
    entries = [{"from": e.origin, "to": e.destination, "w": 1} for e in example_problem.edges]
    path.write_text(json.dumps({"weights": entries}))
    problem = load_problem(data_dir / "example2.json", path)
    assert set(problem.weights.weights.values()) == {1.0}


def test_segments_and_factors(data_dir, example_segments, example_factors):
    segments, atbp = load_segments(data_dir / "example1_segments.json")
    assert segments == example_segments
    assert atbp == 900
    table = load_factor_table(data_dir / "regions.json")
    assert table.regions == example_factors.regions
    assert table.factors == example_factors.factors


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "airports": [\n')
    with pytest.raises(InputError, match=r"broken.json: line \d+ column \d+"):
        load_json(path)


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "absent.json")


@pytest.mark.parametrize("document,message", [
    ({"airlines": [1], "flights": []}, "missing field 'airports'"),
    ({"airports": ["a"], "airlines": ["one"], "flights": []}, "airline must be an integer"),
    ({"airports": ["a"], "airlines": [1], "flights": [{"from": "a", "to": 3, "airline": 1}]}, "airport"),
    ({"airports": [], "airlines": [], "flights": [], "passengers": [{"id": 1.5, "price": 1, "itinerary": []}]},
     "passenger id"),
    ({"airports": [], "airlines": [], "flights": [], "passengers": [{"id": 1, "price": "1", "itinerary": []}]},
     "expected a number"),
])
def test_shape_errors(document, message):
    with pytest.raises(InputError, match=message):
        problem_from_dict(document)


def test_passenger_weights_file(tmp_path):
    path = tmp_path / "pw.json"
    path.write_text(json.dumps({"passenger_weights": [
        {"id": 1, "weights": [{"from": "a", "to": "b", "w": 2}]},
        {"id": "x", "weights": [{"from": "b", "to": "a", "w": 3}]},
    ]}))
    systems = load_passenger_weights(path)
    assert systems[1].weight(Edge("a", "b")) == 2.0
    assert systems["x"].weight(Edge("b", "a")) == 3.0


def test_payload_formatting():
    text = dumps_payload({"10": 1.0, "2": 0.5, "b": -0.0, "a": {"ok": True, "n": 3, "missing": None}})
    assert text.index('"2"') < text.index('"10"') < text.index('"a"') < text.index('"b"')
    assert '"2": 0.500000' in text
    assert '"b": 0.000000' in text
    assert '"n": 3' in text
    assert json.loads(text)["a"] == {"ok": True, "n": 3, "missing": None}


def test_payload_is_stable(example_problem):
    payload = problem_to_dict(example_problem)
    assert dumps_payload(payload) == dumps_payload(problem_to_dict(example_problem))


def test_encode_sigma():
    encoded = encode_value({"sigma": {fk("a", "b", 1): 4}, "subset": (1, 2), "flight": fk("b", "a", 2)})
    assert encoded["sigma"] == [{"from": "a", "to": "b", "airline": 1, "to_airline": 4}]
    assert encoded["subset"] == [1, 2]
    assert encoded["flight"] == {"from": "b", "to": "a", "airline": 2}


def test_report_witness_is_self_contained():
    report = audit("r2", AxiomId.NULL_AIRLINE, TrialConfig(trials=30))
    data = json.loads(dumps_payload(report_to_dict(report)))
    assert data["rule"] == "r2"
    assert data["axiom"] == "null_airline"
    assert data["trials"] == 30
    witness = data["witness"]
    assert witness is not None
    problem = problem_from_dict(witness["problem"])
    assert problem == report.first_witness.problem
    assert witness["lhs"] == pytest.approx(report.first_witness.lhs, abs=1e-6)
