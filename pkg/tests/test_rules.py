"""Tests for the allocation rules."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airline_proration.axioms import TrialConfig, generate_problem
from airline_proration.exceptions import ConfigurationError
from airline_proration.model import AirlinesProblem, Edge, WeightSystem, restrict, total_payments
from airline_proration.rules import (
    Allocation,
    RuleKind,
    RuleSpec,
    allocate,
    equal_flights,
    rule_r1,
    rule_r2,
    rule_r3,
    rule_r4,
    rule_r5,
    weighted_flights,
)
from airline_proration.utils.numeric import approx_equal

from .conftest import EQUAL_EXPECTED, R3_EXPECTED, WEIGHTED_EXPECTED, fk, passenger

SMALL = TrialConfig(seed=7, trials=1)


def test_weighted_flights_example(example_problem):
    result = weighted_flights(example_problem)
    for airline, expected in WEIGHTED_EXPECTED.items():
        assert result[airline] == pytest.approx(expected, abs=5e-4)
    assert result.total() == pytest.approx(81.0, rel=1e-9)


def test_weighted_flights_single_passenger(example_problem):
    result = weighted_flights(restrict(example_problem, [1]))
    assert result[5] == pytest.approx(20 / 42 * 12)
    assert result[2] == pytest.approx(10 / 42 * 12)
    assert result[4] == pytest.approx(12 / 42 * 12)


def test_weighted_flights_sole_operator(example_problem):
    lone = restrict(example_problem, [])
    lone = AirlinesProblem(lone.airports, lone.airlines, lone.flights, (passenger(9, 40, ("d", "f", 1)),), lone.weights)
    result = weighted_flights(lone)
    assert result[1] == 40
    assert all(result[i] == 0 for i in (2, 3, 4, 5))


def test_equal_flights_example(example_problem):
    result = equal_flights(example_problem)
    for airline, expected in EQUAL_EXPECTED.items():
        assert result[airline] == pytest.approx(expected, abs=1e-9)


def test_equal_weights_reproduce_equal_flights(example_problem):
    sevens = WeightSystem.uniform(example_problem.edges, 7.0)
    weighted = weighted_flights(example_problem, sevens)
    equal = equal_flights(example_problem)
    for airline in example_problem.airlines:
        assert approx_equal(weighted[airline], equal[airline], 1e-12)


def test_equal_flights_same_airline_twice(example_problem):
    problem = AirlinesProblem(
        example_problem.airports, example_problem.airlines, example_problem.flights,
        (passenger(1, 50, ("e", "c", 5), ("c", "a", 5)),),
    )
    assert equal_flights(problem)[5] == 50


def test_rule_r1_example(example_problem):
    result = rule_r1(example_problem)
    numerators = {1: 0, 2: 32, 3: 40, 4: 42, 5: 80}
    for airline, numerator in numerators.items():
        assert result[airline] == pytest.approx(numerator / 194 * 81)


def test_rule_r2_example(example_problem):
    result = rule_r2(example_problem)
    assert result.as_dict() == pytest.approx({1: 34.0, 2: 8.0, 3: 21.0, 4: 13.0, 5: 5.0})

    first = rule_r2(restrict(example_problem, [1]))
    assert first.as_dict() == pytest.approx({1: 6.0, 2: 0.0, 3: 6.0, 4: 0.0, 5: 0.0})


def test_rule_r2_falls_back_to_weights_when_every_airline_is_used(ratio_pair_problem):
    problem = restrict(ratio_pair_problem, [2])
    assert rule_r2(problem) == weighted_flights(problem)


def test_rule_r3_example(example_problem):
    result = rule_r3(example_problem)
    for airline, expected in R3_EXPECTED.items():
        assert result[airline] == pytest.approx(expected)
    assert result[5] == pytest.approx(12 / 3 + 30 / 3 + 24 / 2)


def test_rule_r4_identical_weights_is_weighted(example_problem):
    same = {pid: example_problem.weights for pid in example_problem.passenger_ids}
    assert rule_r4(example_problem, same) == weighted_flights(example_problem)


def test_rule_r4_scaling_one_passenger(example_problem):
    systems = {pid: example_problem.weights for pid in example_problem.passenger_ids}
    doubled = dict(systems)
    doubled[1] = example_problem.weights.scaled(2.0)
    base = rule_r4(example_problem, systems)
    result = rule_r4(example_problem, doubled)
    for airline in example_problem.airlines:
        assert result[airline] == pytest.approx(base[airline], rel=1e-12)


def test_rule_r4_missing_passenger_weights(example_problem):
    with pytest.raises(ConfigurationError):
        rule_r4(example_problem, {1: example_problem.weights})


def test_rule_r5_example(example_problem):
    result = rule_r5(example_problem)
    counts = {1: 0, 2: 3, 3: 2, 4: 2, 5: 4}
    for airline, count in counts.items():
        assert result[airline] == pytest.approx(count / 11 * 81)


def test_allocate_dispatches(example_problem):
    assert allocate(example_problem, RuleSpec(RuleKind.WEIGHTED)) == weighted_flights(example_problem)
    assert allocate(example_problem, "equal") == equal_flights(example_problem)
    assert allocate(example_problem, RuleSpec.from_name("r3")) == rule_r3(example_problem)


@pytest.mark.parametrize("name", ["weighted", "equal", "r1", "r2", "r3", "r5"])
def test_zero_passengers_gives_zeros(example_problem, name):
    result = allocate(restrict(example_problem, []), RuleSpec.from_name(name))
    assert result == Allocation.zeros(example_problem.airlines)


def test_weight_rules_need_weights(example_problem):
    bare = AirlinesProblem(example_problem.airports, example_problem.airlines, example_problem.flights,
                           example_problem.passengers)
    for name in ("weighted", "r1", "r2"):
        with pytest.raises(ConfigurationError):
            allocate(bare, RuleSpec.from_name(name))
    with pytest.raises(ConfigurationError):
        allocate(bare, RuleSpec.from_name("r4"))


def test_unknown_rule_name():
    with pytest.raises(ConfigurationError, match="unknown rule"):
        RuleSpec.from_name("r9")


def test_missing_edge_weight(example_problem):
    partial = WeightSystem({Edge("a", "b"): 1.0})
    with pytest.raises(ConfigurationError, match="no weight"):
        weighted_flights(example_problem, partial)


def test_allocation_series(example_problem):
    series = equal_flights(example_problem).to_series("equal")
    assert list(series.index) == [1, 2, 3, 4, 5]
    assert series.name == "equal"
    assert series.sum() == pytest.approx(81.0)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_single_passenger_pooled_rules_match(seed):
    problem = generate_problem(TrialConfig(seed=seed, trials=1, max_passengers=1))
    for airline in problem.airlines:
        assert approx_equal(rule_r1(problem)[airline], weighted_flights(problem)[airline])
        assert approx_equal(rule_r5(problem)[airline], equal_flights(problem)[airline])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_flight_rules_decompose_per_passenger(seed):
    problem = generate_problem(TrialConfig(seed=seed, trials=1))
    for rule in (weighted_flights, equal_flights, rule_r3):
        whole = rule(problem)
        pieces = [rule(restrict(problem, [pid])) for pid in problem.passenger_ids]
        for airline in problem.airlines:
            assert approx_equal(whole[airline], sum(p[airline] for p in pieces))


def test_one_flight_itineraries_on_distinct_airlines_agree():
    flights = (fk("a", "b", 1), fk("b", "c", 2), fk("c", "a", 3))
    problem = AirlinesProblem(
        tuple("abc"), (1, 2, 3), flights,
        (passenger(1, 10, ("a", "b", 1)), passenger(2, 20, ("b", "c", 2)), passenger(3, 5, ("a", "b", 1))),
        WeightSystem({Edge("a", "b"): 3, Edge("b", "c"): 9, Edge("c", "a"): 1}),
    )
    expected = {1: 15.0, 2: 20.0, 3: 0.0}
    for rule in (weighted_flights, equal_flights, rule_r3):
        assert rule(problem).as_dict() == pytest.approx(expected)
    assert total_payments(problem) == 35
