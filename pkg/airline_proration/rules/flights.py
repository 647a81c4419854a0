"""
Flight-proportional rules.

Rules:
    - weighted_flights: W^w, each price split by the edge weights each airline flies
    - equal_flights: E, each price split by the number of flights each airline flies
    - rule_r4: like W^w with a weight system that depends on the passenger

All three divide passenger by passenger and add up, so they decompose over
any partition of the passengers.
"""

from typing import Callable, Dict, Mapping, Optional

from ..exceptions import ConfigurationError
from ..model import AirlineId, AirlinesProblem, Edge, Passenger, PassengerId, WeightSystem
from .base import Allocation, RuleSpec


def split_by_weight(
    amounts: Dict[AirlineId, float],
    passenger: Passenger,
    weight_of: Callable[[Edge], float],
) -> None:
    """
    Add one passenger's price to ``amounts`` in proportion to flight weights.

    Airline i receives (sum of w_e over f_i^j) / (sum of w_e over f^j) * p^j.

    Args:
        amounts: Running allocation, updated in place.
        passenger: Passenger whose price is divided.
        weight_of: Weight of an edge.
    """
    operated: Dict[AirlineId, float] = {}
    total = 0.0
    for flight in passenger.flights:
        w = weight_of(flight.edge)
        operated[flight.airline] = operated.get(flight.airline, 0.0) + w
        total += w
    for airline, w in operated.items():
        amounts[airline] = amounts.get(airline, 0.0) + w / total * passenger.price


def weighted_flights(problem: AirlinesProblem, weights: Optional[WeightSystem] = None) -> Allocation:
    """
    Weighted flights rule W^w.

    W_i = sum_j (sum_{(e,i) in f_i^j} w_e / sum_{(e,k) in f^j} w_e) * p^j

    Args:
        problem: Airlines problem.
        weights: Weight system; defaults to the one attached to the problem.

    Returns:
        Allocation over N.

    Raises:
        ConfigurationError: if no weight system is available or an itinerary
            edge has no weight.
    """
    w = RuleSpec("weighted", weights).resolve_weights(problem)
    amounts = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        split_by_weight(amounts, passenger, w.weight)
    return Allocation.from_mapping(amounts)


def equal_flights(problem: AirlinesProblem) -> Allocation:
    """
    Equal flights rule E.

    E_i = sum_j (|f_i^j| / |f^j|) * p^j. Coincides with W^w whenever all
    weights are equal.
    """
    amounts = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        split_by_weight(amounts, passenger, lambda edge: 1.0)
    return Allocation.from_mapping(amounts)


def rule_r4(
    problem: AirlinesProblem,
    passenger_weights: Mapping[PassengerId, WeightSystem],
) -> Allocation:
    """
    Weighted flights division with passenger-dependent weights.

    R4_i = sum_j (sum_{(e,i) in f_i^j} w^j_e / sum_{(e,k) in f^j} w^j_e) * p^j

    Args:
        problem: Airlines problem.
        passenger_weights: Weight system w^j for every passenger j.

    Raises:
        ConfigurationError: if a passenger has no weight system or one of its
            edges is missing from it.
    """
    amounts = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        try:
            w = passenger_weights[passenger.id]
        except KeyError:
            raise ConfigurationError(f"no weight system for passenger {passenger.id!r}") from None
        split_by_weight(amounts, passenger, w.weight)
    return Allocation.from_mapping(amounts)
