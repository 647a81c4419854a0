"""
Executable axiom checks.

Each check evaluates a rule on a problem and on its transformed version and
compares the amounts with a relative tolerance. A failed check carries a
Witness holding everything needed to rerun it.

Checks:
    - check_rule_validity: efficiency and nonnegativity
    - check_additivity: R(A) = R(A|T) + R(A|M\\T)
    - check_null_airline: airlines without passengers receive 0
    - check_independence_empty_flights: canceling an empty flight changes nothing
    - check_flights_equivalence: equal flight counts, equal amounts
    - check_independence_other_airlines: reassigning others' flights leaves i unchanged
    - check_ratio_preservation: identical segments keep their payout ratio
    - check_pairwise_homogeneity: operated weight lambda times larger, amount lambda times larger
"""

import itertools
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from ..exceptions import PreconditionError
from ..model import (
    AirlineId,
    AirlinesProblem,
    FlightKey,
    PassengerId,
    WeightSystem,
    cancel_empty_flight,
    cancel_flights,
    reassign,
    restrict,
    total_payments,
)
from ..rules import Allocation, RuleSpec, allocate
from ..utils.numeric import DEFAULT_TOLERANCE, approx_equal
from .outcome import RULE_VALIDITY, AxiomId, CheckOutcome, RuleLike, Verdict, Witness

logger = logging.getLogger(__name__)

LAMBDA_TOLERANCE = 1e-9


def as_rule(rule: RuleLike):
    """RuleSpec for a rule name; specs and callables pass through."""
    if isinstance(rule, str):
        return RuleSpec.from_name(rule)
    return rule


def evaluate(rule: RuleLike, problem: AirlinesProblem) -> Allocation:
    rule = as_rule(rule)
    if isinstance(rule, RuleSpec):
        return allocate(problem, rule)
    return rule(problem)


def _witness(axiom, rule, problem, transformation, airline, lhs, rhs, tol) -> CheckOutcome:
    name = axiom.value if isinstance(axiom, AxiomId) else axiom
    return CheckOutcome.failed(Witness(name, rule, problem, dict(transformation), airline, lhs, rhs, tol))


def _compare(
    axiom,
    rule,
    problem: AirlinesProblem,
    transformation: Mapping[str, Any],
    pairs: Iterable[Tuple[AirlineId, float, float]],
    tol: float,
) -> CheckOutcome:
    for airline, lhs, rhs in pairs:
        if not approx_equal(lhs, rhs, tol):
            return _witness(axiom, rule, problem, transformation, airline, lhs, rhs, tol)
    return CheckOutcome.passed()


def check_rule_validity(rule: RuleLike, problem: AirlinesProblem, tol: float = DEFAULT_TOLERANCE) -> CheckOutcome:
    """
    Efficiency and nonnegativity of one evaluation.

    Passes iff the amounts over N sum to the total payments within ``tol``
    and no amount is below -tol.
    """
    rule = as_rule(rule)
    allocation = evaluate(rule, problem)
    for airline in problem.airlines:
        amount = allocation.get(airline)
        if amount < -tol:
            return _witness(RULE_VALIDITY, rule, problem, {}, airline, amount, 0.0, tol)
    distributed = sum(allocation.get(i) for i in problem.airlines)
    paid = total_payments(problem)
    if not approx_equal(distributed, paid, tol):
        return _witness(RULE_VALIDITY, rule, problem, {}, None, distributed, paid, tol)
    return CheckOutcome.passed()


def check_additivity(
    rule: RuleLike,
    problem: AirlinesProblem,
    subset: Iterable[PassengerId],
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    Compare R(A) with R(A|T) + R(A|M\\T) airline by airline.

    Raises:
        InputError: if T names an unknown passenger.
    """
    rule = as_rule(rule)
    subset = tuple(subset)
    chosen = set(subset)
    whole = evaluate(rule, problem)
    part = evaluate(rule, restrict(problem, subset))
    rest = evaluate(rule, restrict(problem, [pid for pid in problem.passenger_ids if pid not in chosen]))
    pairs = ((i, whole.get(i), part.get(i) + rest.get(i)) for i in problem.airlines)
    return _compare(AxiomId.ADDITIVITY, rule, problem, {"subset": subset}, pairs, tol)


def check_null_airline(rule: RuleLike, problem: AirlinesProblem, tol: float = DEFAULT_TOLERANCE) -> CheckOutcome:
    """Airlines serving no passenger must receive 0; inapplicable without such an airline."""
    rule = as_rule(rule)
    nulls = problem.index.null_airlines()
    if not nulls:
        return CheckOutcome.inapplicable()
    allocation = evaluate(rule, problem)
    return _compare(AxiomId.NULL_AIRLINE, rule, problem, {}, ((i, allocation.get(i), 0.0) for i in nulls), tol)


def check_independence_empty_flights(
    rule: RuleLike,
    problem: AirlinesProblem,
    flight: FlightKey,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    Compare amounts before and after canceling an empty flight, on the airlines that remain.

    Raises:
        InputError: if the flight is not in F.
        PreconditionError: if a passenger takes the flight.
    """
    rule = as_rule(rule)
    reduced = cancel_empty_flight(problem, flight)
    before = evaluate(rule, problem)
    after = evaluate(rule, reduced)
    pairs = ((i, before.get(i), after.get(i)) for i in reduced.airlines)
    return _compare(AxiomId.IND_EMPTY_FLIGHTS, rule, problem, {"flight": flight}, pairs, tol)


def equivalent_pairs(problem: AirlinesProblem) -> List[Tuple[AirlineId, AirlineId]]:
    """Airline pairs (i, i') with |f_i^j| = |f_i'^j| for every passenger j."""
    index = problem.index
    profiles = {
        i: tuple(len(index.segment(pid, i)) for pid in problem.passenger_ids)
        for i in problem.airlines
    }
    return [(a, b) for a, b in itertools.combinations(problem.airlines, 2) if profiles[a] == profiles[b]]


def check_flights_equivalence(
    rule: RuleLike,
    problem: AirlinesProblem,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """Airlines with equal flight counts in every itinerary must receive equal amounts."""
    rule = as_rule(rule)
    pairs = equivalent_pairs(problem)
    if not pairs:
        return CheckOutcome.inapplicable()
    allocation = evaluate(rule, problem)
    for a, b in pairs:
        lhs, rhs = allocation.get(a), allocation.get(b)
        if not approx_equal(lhs, rhs, tol):
            return _witness(AxiomId.FLIGHTS_EQUIVALENCE, rule, problem, {"airlines": (a, b)}, a, lhs, rhs, tol)
    return CheckOutcome.passed()


def check_independence_other_airlines(
    rule: RuleLike,
    problem: AirlinesProblem,
    sigma: Mapping[FlightKey, AirlineId],
    airline: AirlineId,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    Compare airline i's amount in A and in A^sigma.

    Raises:
        PreconditionError: if sigma moves one of i's flights or hands i another flight.
        InputError: if sigma is not a valid reassignment of F.
    """
    rule = as_rule(rule)
    if airline not in problem.airlines:
        raise PreconditionError(f"airline {airline} is not in N")
    for flight in problem.flights:
        target = sigma.get(flight)
        if flight.airline == airline and target != airline:
            raise PreconditionError(f"sigma moves {flight} away from airline {airline}")
        if flight.airline != airline and target == airline:
            raise PreconditionError(f"sigma hands {flight} to airline {airline}")
    before = evaluate(rule, problem)
    after = evaluate(rule, reassign(problem, sigma))
    transformation = {"sigma": dict(sigma), "airline": airline}
    return _compare(
        AxiomId.IND_OTHER_AIRLINES, rule, problem, transformation,
        [(airline, before.get(airline), after.get(airline))], tol,
    )


def ratio_applicable(
    problem: AirlinesProblem,
    passengers: Tuple[PassengerId, PassengerId],
    airlines: Tuple[AirlineId, AirlineId],
) -> bool:
    """i and i' fly both passengers, each with the same flights for both."""
    index = problem.index
    j, k = passengers
    for airline in airlines:
        first, second = index.segment(j, airline), index.segment(k, airline)
        if not first or set(first) != set(second):
            return False
    return True


def _ratio_outcome(rule, problem, passengers, airlines, first: Allocation, second: Allocation, tol):
    a, b = airlines
    lhs = first.get(a) * second.get(b)
    rhs = second.get(a) * first.get(b)
    transformation = {"passengers": passengers, "airlines": airlines}
    return _compare(AxiomId.RATIO_PRESERVATION, rule, problem, transformation, [(a, lhs, rhs)], tol)


def check_ratio_preservation(
    rule: RuleLike,
    problem: AirlinesProblem,
    j: PassengerId,
    j_prime: PassengerId,
    i: AirlineId,
    i_prime: AirlineId,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    Compare R_i/R_i' on A|{j} and A|{j'} in cross-multiplied form.

    Inapplicable unless i and i' fly both passengers with identical flights.
    """
    rule = as_rule(rule)
    if j == j_prime:
        return CheckOutcome.passed()
    if not ratio_applicable(problem, (j, j_prime), (i, i_prime)):
        return CheckOutcome.inapplicable()
    first = evaluate(rule, restrict(problem, [j]))
    second = evaluate(rule, restrict(problem, [j_prime]))
    return _ratio_outcome(rule, problem, (j, j_prime), (i, i_prime), first, second, tol)


def ratio_preservation_outcomes(
    rule: RuleLike,
    problem: AirlinesProblem,
    tol: float = DEFAULT_TOLERANCE,
) -> List[CheckOutcome]:
    """
    Run check_ratio_preservation on every applicable (j < j', i < i'),
    evaluating each single-passenger restriction once.
    """
    rule = as_rule(rule)
    single: Dict[PassengerId, Allocation] = {}
    outcomes = []
    for j, k in itertools.combinations(problem.passenger_ids, 2):
        shared = sorted(problem.index.airlines_by_passenger[j] & problem.index.airlines_by_passenger[k])
        for a, b in itertools.combinations(shared, 2):
            if not ratio_applicable(problem, (j, k), (a, b)):
                continue
            for pid in (j, k):
                if pid not in single:
                    single[pid] = evaluate(rule, restrict(problem, [pid]))
            outcomes.append(_ratio_outcome(rule, problem, (j, k), (a, b), single[j], single[k], tol))
    return outcomes


def homogeneity_factor(
    problem: AirlinesProblem,
    weights: WeightSystem,
    i: AirlineId,
    i_prime: AirlineId,
) -> Optional[float]:
    """
    The lambda > 0 with sum_{f_i^j} w = lambda * sum_{f_i'^j} w for every j, or None.

    Taken from the first passenger flown by both airlines; passengers flown
    by neither are skipped.
    """
    index = problem.index
    factor = None
    for pid in problem.passenger_ids:
        own = sum(weights.weight(f.edge) for f in index.segment(pid, i))
        other = sum(weights.weight(f.edge) for f in index.segment(pid, i_prime))
        if own == 0 and other == 0:
            continue
        if own == 0 or other == 0:
            return None
        if factor is None:
            factor = own / other
        elif not approx_equal(own, factor * other, LAMBDA_TOLERANCE):
            return None
    return factor


def check_pairwise_homogeneity(
    rule: RuleLike,
    problem: AirlinesProblem,
    i: AirlineId,
    i_prime: AirlineId,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    R_i = lambda * R_i' whenever airline i's operated weight is lambda times i''s for every passenger.

    The weight system is the rule's own when it has one, else the problem's;
    without either the check is inapplicable.
    """
    rule = as_rule(rule)
    if i == i_prime:
        return CheckOutcome.passed()
    weights = rule.weights if isinstance(rule, RuleSpec) and rule.weights is not None else problem.weights
    if weights is None:
        return CheckOutcome.inapplicable()
    factor = homogeneity_factor(problem, weights, i, i_prime)
    if factor is None:
        return CheckOutcome.inapplicable()
    allocation = evaluate(rule, problem)
    transformation = {"airlines": (i, i_prime), "lambda": factor}
    return _compare(
        AxiomId.PAIRWISE_HOMOGENEITY, rule, problem, transformation,
        [(i, allocation.get(i), factor * allocation.get(i_prime))], tol,
    )


def check_empty_flight_implication(
    rule: RuleLike,
    problem: AirlinesProblem,
    tol: float = DEFAULT_TOLERANCE,
) -> CheckOutcome:
    """
    Independence of empty flights implies null airline.

    Every flight of a null airline is empty, so canceling them all removes
    the airline. When the remaining airlines keep their amounts, efficiency
    leaves nothing for the removed one. Inapplicable when the problem has no
    null airline or the cancellations change some remaining amount; fails
    with the null-airline witness otherwise.
    """
    rule = as_rule(rule)
    nulls = problem.index.null_airlines()
    if not nulls:
        return CheckOutcome.inapplicable()
    if not problem.passengers:
        return check_null_airline(rule, problem, tol)
    before = evaluate(rule, problem)
    for airline in nulls:
        reduced = cancel_flights(problem, [f for f in problem.flights if f.airline == airline])
        after = evaluate(rule, reduced)
        if not all(approx_equal(before.get(i), after.get(i), tol) for i in reduced.airlines):
            logger.debug(f"Removing null airline {airline} moves other amounts; implication not applicable")
            return CheckOutcome.inapplicable()
    return check_null_airline(rule, problem, tol)


def _replay_other_airlines(witness: Witness) -> CheckOutcome:
    t = witness.transformation
    return check_independence_other_airlines(witness.rule, witness.problem, t["sigma"], t["airline"], witness.tol)


_REPLAY = {
    RULE_VALIDITY: lambda w: check_rule_validity(w.rule, w.problem, w.tol),
    AxiomId.ADDITIVITY.value: lambda w: check_additivity(w.rule, w.problem, w.transformation["subset"], w.tol),
    AxiomId.NULL_AIRLINE.value: lambda w: check_null_airline(w.rule, w.problem, w.tol),
    AxiomId.IND_EMPTY_FLIGHTS.value: lambda w: check_independence_empty_flights(
        w.rule, w.problem, w.transformation["flight"], w.tol
    ),
    AxiomId.FLIGHTS_EQUIVALENCE.value: lambda w: check_flights_equivalence(w.rule, w.problem, w.tol),
    AxiomId.IND_OTHER_AIRLINES.value: _replay_other_airlines,
    AxiomId.RATIO_PRESERVATION.value: lambda w: check_ratio_preservation(
        w.rule, w.problem, *w.transformation["passengers"], *w.transformation["airlines"], w.tol
    ),
    AxiomId.PAIRWISE_HOMOGENEITY.value: lambda w: check_pairwise_homogeneity(
        w.rule, w.problem, *w.transformation["airlines"], w.tol
    ),
}


def replay_witness(witness: Witness) -> CheckOutcome:
    """Rerun the check recorded in a witness; a faithful witness fails again with the same values."""
    return _REPLAY[witness.axiom](witness)


def aggregate(outcomes: Iterable[CheckOutcome]) -> CheckOutcome:
    """First failure if any, else pass if anything passed, else inapplicable."""
    passed = False
    for outcome in outcomes:
        if outcome.verdict is Verdict.FAIL:
            return outcome
        passed = passed or outcome.verdict is Verdict.PASS
    return CheckOutcome.passed() if passed else CheckOutcome.inapplicable()
