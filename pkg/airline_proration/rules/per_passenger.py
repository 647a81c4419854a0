"""
Per-passenger equal-split rules.

Rules:
    - rule_r2: each price split equally among the airlines the passenger does not fly
    - rule_r3: each price split equally among the airlines the passenger flies
"""

from typing import Optional

from ..model import AirlinesProblem, WeightSystem
from .base import Allocation, RuleSpec
from .flights import split_by_weight


def rule_r2(problem: AirlinesProblem, weights: Optional[WeightSystem] = None) -> Allocation:
    """
    Split each price among the airlines not used by the passenger.

    For passenger j with N^j != N, every airline outside N^j receives
    p^j / |N \\ N^j| and the airlines of N^j receive nothing. A passenger
    flying every airline of N is divided by the weighted flights rule.

    Args:
        problem: Airlines problem.
        weights: Weight system for passengers flying every airline; defaults to
            the one attached to the problem.

    Raises:
        ConfigurationError: if no weight system is available.
    """
    w = RuleSpec("r2", weights).resolve_weights(problem)
    airlines = set(problem.airlines)
    amounts = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        unused = sorted(airlines - passenger.airlines)
        if not unused:
            split_by_weight(amounts, passenger, w.weight)
            continue
        share = passenger.price / len(unused)
        for airline in unused:
            amounts[airline] += share
    return Allocation.from_mapping(amounts)


def rule_r3(problem: AirlinesProblem) -> Allocation:
    """
    Split each price equally among the airlines operating the passenger's flights.

    R3_i = sum over passengers j with i in N^j of p^j / |N^j|. Airlines
    serving nobody receive 0. This is the Shapley value of the pessimistic
    coalition game (see ``game``).
    """
    amounts = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        share = passenger.price / len(passenger.airlines)
        for airline in sorted(passenger.airlines):
            amounts[airline] = amounts.get(airline, 0.0) + share
    return Allocation.from_mapping(amounts)
