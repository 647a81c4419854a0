"""
End-to-end acceptance: the claims table, the empty-flight implication, the
game claims, conservation and oracle equivalences over seeded problems.
"""

import pytest

from airline_proration.axioms import (
    EXPECTED,
    AxiomId,
    Constraints,
    TrialConfig,
    Verdict,
    audit,
    check_empty_flight_implication,
    check_rule_validity,
    replay_witness,
    sample_passenger_weights,
    trial_rng,
)
from airline_proration.axioms.generators import PASSENGER_WEIGHT_STREAM, cached_problem
from airline_proration.game import convexity_check, core_check, pessimistic_game, shapley
from airline_proration.model import WeightSystem
from airline_proration.rules import RuleKind, RuleSpec, allocate, equal_flights, rule_r3, weighted_flights
from airline_proration.utils.numeric import approx_equal

pytestmark = pytest.mark.slow

CONFIG = TrialConfig(seed=0, trials=1000)

CLAIMED = [(rule, axiom, claim) for rule, claims in EXPECTED.items() for axiom, claim in claims.items()
           if claim is not None]


def _problems(trials=CONFIG.trials, constraints=None):
    return [(k, cached_problem(CONFIG, constraints, k)) for k in range(trials)]


def _spec(name, problem, trial):
    if RuleKind(name).needs_passenger_weights:
        weights = sample_passenger_weights(problem, trial_rng(CONFIG, trial, PASSENGER_WEIGHT_STREAM))
        return RuleSpec.from_name(name, passenger_weights=weights)
    return RuleSpec.from_name(name)


@pytest.mark.parametrize("rule,axiom,claim", CLAIMED, ids=[f"{r}-{a.value}" for r, a, _ in CLAIMED])
def test_claims_table(rule, axiom, claim):
    report = audit(rule, axiom, CONFIG)
    if claim:
        assert report.fail_count == 0, report.first_witness
        assert report.pass_count > 0
    else:
        assert report.counterexample_found
        replayed = replay_witness(report.first_witness)
        assert replayed.verdict is Verdict.FAIL
        assert (replayed.witness.lhs, replayed.witness.rhs) == (report.first_witness.lhs, report.first_witness.rhs)


@pytest.mark.parametrize("rule", ["weighted", "equal"])
def test_characterizing_axioms_on_subdomain(rule):
    constraints = {
        "weighted": Constraints(min_itinerary_length=2),
        "equal": Constraints(min_unused_flights=3),
    }[rule]
    axioms = {
        "weighted": [AxiomId.ADDITIVITY, AxiomId.NULL_AIRLINE, AxiomId.IND_OTHER_AIRLINES,
                     AxiomId.RATIO_PRESERVATION, AxiomId.PAIRWISE_HOMOGENEITY],
        "equal": [AxiomId.ADDITIVITY, AxiomId.FLIGHTS_EQUIVALENCE, AxiomId.IND_OTHER_AIRLINES],
    }[rule]
    config = TrialConfig(seed=0, trials=200, max_edges=10)
    for axiom in axioms:
        assert audit(rule, axiom, config, constraints).fail_count == 0


@pytest.mark.parametrize("rule", ["weighted", "equal", "r1", "r3", "r4"])
def test_empty_flight_independence_implies_null_airline(rule):
    for trial, problem in _problems():
        outcome = check_empty_flight_implication(_spec(rule, problem, trial), problem, CONFIG.tolerance)
        assert outcome.verdict is not Verdict.FAIL, outcome.witness


def test_game_claims():
    for _, problem in _problems(500):
        game = pessimistic_game(problem)
        value = shapley(game)
        r3 = rule_r3(problem)
        for airline in problem.airlines:
            assert approx_equal(value[airline], r3[airline], 1e-9)
        assert convexity_check(game).convex
        assert core_check(game, value).in_core


@pytest.mark.parametrize("rule", [k.value for k in RuleKind])
def test_conservation(rule):
    for trial, problem in _problems():
        spec = _spec(rule, problem, trial)
        assert check_rule_validity(spec, problem, 1e-9).ok
        assert min(amount for _, amount in allocate(problem, spec).items) >= -1e-12


def test_uniform_weights_match_equal_flights():
    for _, problem in _problems():
        uniform = weighted_flights(problem, WeightSystem.uniform(problem.edges))
        equal = equal_flights(problem)
        for airline in problem.airlines:
            assert approx_equal(uniform[airline], equal[airline], 1e-12)


@pytest.mark.parametrize("factor", [0.5, 3.0, 1000.0])
def test_weighted_rule_is_scale_invariant(factor):
    for _, problem in _problems():
        base = weighted_flights(problem)
        scaled = weighted_flights(problem, problem.weights.scaled(factor))
        best = max(base.airlines, key=base.get)
        assert approx_equal(scaled[best], max(amount for _, amount in scaled.items), 1e-12)
        for airline in problem.airlines:
            assert approx_equal(base[airline], scaled[airline], 1e-12)
