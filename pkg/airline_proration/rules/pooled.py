"""
Pooled rules.

Rules:
    - rule_r1: whole revenue split by the weight of the non-empty flights of each airline
    - rule_r5: whole revenue split by the number of non-empty flights of each airline

Both pool all passengers before dividing, so neither decomposes over
passenger subsets.
"""

from typing import Callable, Dict, Optional

from ..model import AirlineId, AirlinesProblem, Edge, WeightSystem, total_payments
from .base import Allocation, RuleSpec


def _pooled(problem: AirlinesProblem, weight_of: Callable[[Edge], float]) -> Allocation:
    operated: Dict[AirlineId, float] = {i: 0.0 for i in problem.airlines}
    for passenger in problem.passengers:
        for flight in passenger.flights:
            operated[flight.airline] = operated.get(flight.airline, 0.0) + weight_of(flight.edge)
    pool = sum(operated.values())
    if pool == 0:
        return Allocation.zeros(operated)
    revenue = total_payments(problem)
    return Allocation.from_mapping({i: w / pool * revenue for i, w in operated.items()})


def rule_r1(problem: AirlinesProblem, weights: Optional[WeightSystem] = None) -> Allocation:
    """
    Pooled weighted rule R1.

    R1_i = (sum_j sum_{(e,i) in f_i^j} w_e) / (sum over all airlines of the
    same quantity) * sum_j p^j

    Args:
        problem: Airlines problem.
        weights: Weight system; defaults to the one attached to the problem.
    """
    w = RuleSpec("r1", weights).resolve_weights(problem)
    return _pooled(problem, w.weight)


def rule_r5(problem: AirlinesProblem) -> Allocation:
    """
    Pooled flight-count rule R5.

    R5_i = (sum_j |f_i^j|) / (sum_j |f^j|) * sum_j p^j
    """
    return _pooled(problem, lambda edge: 1.0)
