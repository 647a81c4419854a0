"""Tests for the pessimistic coalition game."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airline_proration.axioms import TrialConfig, generate_problem
from airline_proration.exceptions import CapacityError, InputError
from airline_proration.game import (
    CharacteristicFunction,
    analyze,
    convexity_check,
    core_check,
    is_monotone,
    is_superadditive,
    pessimistic_game,
    shapley,
)
from airline_proration.model import AirlinesProblem, restrict
from airline_proration.rules import Allocation, rule_r3

from .conftest import R3_EXPECTED


@pytest.fixture
def majority():
    """Three-player majority game: any two players win 1."""
    return CharacteristicFunction.from_mapping(
        [1, 2, 3], {(1, 2): 1.0, (1, 3): 1.0, (2, 3): 1.0, (1, 2, 3): 1.0}
    )


def test_example_game_values(example_problem):
    game = pessimistic_game(example_problem)
    assert game.value([]) == 0
    assert game.value([2, 4, 5]) == 42
    assert game.value([2, 3]) == 15
    assert game.value([3, 5]) == 24
    assert game.grand_value() == 81
    assert game.value([1]) == 0


def test_example_shapley_is_r3(example_problem):
    value = shapley(pessimistic_game(example_problem))
    for airline, expected in R3_EXPECTED.items():
        assert value[airline] == pytest.approx(expected, abs=1e-9)


def test_example_analysis(example_problem):
    analysis = analyze(example_problem)
    assert analysis.equals_r3
    assert analysis.convexity.convex
    assert analysis.convexity.witness is None
    assert analysis.shapley_in_core
    assert analysis.monotone
    assert analysis.superadditive
    assert analysis.weighted_in_core is not None


def test_symmetric_two_player_game():
    game = CharacteristicFunction.from_mapping([1, 2], {(1, 2): 10.0})
    assert shapley(game).as_dict() == pytest.approx({1: 5.0, 2: 5.0})
    assert convexity_check(game).convex


def test_additive_game():
    costs = {1: 2.0, 2: 5.0, 3: 7.5}
    values = {
        members: sum(costs[i] for i in members)
        for size in range(1, 4)
        for members in itertools.combinations(costs, size)
    }
    game = CharacteristicFunction.from_mapping(costs, values)
    value = shapley(game)
    assert value.as_dict() == pytest.approx(costs)
    assert convexity_check(game).convex
    assert core_check(game, value).in_core


def test_non_convex_pair_is_the_witness():
    game = CharacteristicFunction.from_mapping([1, 2], {(1,): 3.0, (2,): 3.0, (1, 2): 4.0})
    result = convexity_check(game)
    assert not result.convex
    assert result.witness == (1, frozenset(), frozenset({2}))
    assert not is_superadditive(game)


def test_analysis_without_weights(example_problem):
    bare = AirlinesProblem(example_problem.airports, example_problem.airlines, example_problem.flights,
                           example_problem.passengers)
    assert analyze(bare).weighted_in_core is None


def test_zero_passenger_game(example_problem):
    game = pessimistic_game(restrict(example_problem, []))
    assert not np.any(game.values)
    assert shapley(game) == Allocation.zeros(example_problem.airlines)


def test_shapley_of_majority_game(majority):
    value = shapley(majority)
    assert value.as_dict() == pytest.approx({1: 1 / 3, 2: 1 / 3, 3: 1 / 3})


def test_majority_game_is_not_convex(majority):
    result = convexity_check(majority)
    assert not result.convex
    i, s, t = result.witness
    assert i not in s and i not in t
    assert s < t and len(t - s) == 1
    gain_small = majority.value(s | {i}) - majority.value(s)
    gain_large = majority.value(t | {i}) - majority.value(t)
    assert gain_small > gain_large


def test_core_violation_reports_smallest_coalition(majority):
    x = Allocation.from_mapping({1: 1 / 3, 2: 1 / 3, 3: 1 / 3})
    result = core_check(majority, x)
    assert not result.in_core
    assert result.violated_coalition == frozenset({1, 2})
    assert result.efficient


def test_core_efficiency_failure():
    game = CharacteristicFunction.from_mapping([1, 2], {(1, 2): 2.0})
    result = core_check(game, Allocation.from_mapping({1: 5.0, 2: 5.0}))
    assert not result.in_core
    assert not result.efficient
    assert result.violated_coalition == frozenset({1, 2})
    assert core_check(game, Allocation.from_mapping({1: 1.5, 2: 0.5})).in_core


def test_core_check_needs_every_player(majority):
    with pytest.raises(InputError):
        core_check(majority, Allocation.from_mapping({1: 1.0}))


def test_monotone_and_superadditive(majority):
    assert is_monotone(majority)
    assert is_superadditive(majority)
    falling = CharacteristicFunction.from_mapping([1, 2], {(1,): 3.0, (1, 2): 1.0})
    assert not is_monotone(falling)
    assert not is_superadditive(falling)


def test_invalid_tables():
    with pytest.raises(InputError):
        CharacteristicFunction((1, 2), np.zeros(3))
    with pytest.raises(InputError):
        CharacteristicFunction((1,), np.array([1.0, 2.0]))
    with pytest.raises(InputError):
        CharacteristicFunction.from_mapping([1, 2], {(3,): 1.0})


def test_values_are_read_only(majority):
    with pytest.raises(ValueError):
        majority.values[1] = 5.0


def test_capacity_bounds():
    big = CharacteristicFunction(tuple(range(1, 14)), np.zeros(1 << 13))
    with pytest.raises(CapacityError):
        shapley(big)
    with pytest.raises(CapacityError):
        convexity_check(big)
    assert core_check(big, Allocation.zeros(range(1, 14))).in_core


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_generated_games_match_claims(seed):
    problem = generate_problem(TrialConfig(seed=seed, trials=1))
    game = pessimistic_game(problem)
    value = shapley(game)
    r3 = rule_r3(problem)
    for airline in problem.airlines:
        assert value[airline] == pytest.approx(r3[airline], abs=1e-9)
    assert convexity_check(game).convex
    assert core_check(game, value).in_core
