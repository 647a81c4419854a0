"""Rule dispatcher."""

from typing import Callable, Dict

from ..model import AirlinesProblem
from .base import Allocation, RuleKind, RuleSpec
from .flights import equal_flights, rule_r4, weighted_flights
from .per_passenger import rule_r2, rule_r3
from .pooled import rule_r1, rule_r5

_RULES: Dict[RuleKind, Callable[[AirlinesProblem, RuleSpec], Allocation]] = {
    RuleKind.WEIGHTED: lambda problem, rule: weighted_flights(problem, rule.resolve_weights(problem)),
    RuleKind.EQUAL: lambda problem, rule: equal_flights(problem),
    RuleKind.R1: lambda problem, rule: rule_r1(problem, rule.resolve_weights(problem)),
    RuleKind.R2: lambda problem, rule: rule_r2(problem, rule.resolve_weights(problem)),
    RuleKind.R3: lambda problem, rule: rule_r3(problem),
    RuleKind.R4: lambda problem, rule: rule_r4(problem, rule.resolve_passenger_weights(problem)),
    RuleKind.R5: lambda problem, rule: rule_r5(problem),
}


def allocate(problem: AirlinesProblem, rule: RuleSpec) -> Allocation:
    """
    Evaluate the rule selected by ``rule`` on ``problem``.

    Args:
        problem: A valid airlines problem.
        rule: Rule selector with the weight data it needs.

    Returns:
        Allocation over N, summing to the total passenger payments.

    Raises:
        ConfigurationError: if the rule's weight data is missing.
    """
    if isinstance(rule, (str, RuleKind)):
        rule = RuleSpec(RuleKind(rule))
    return _RULES[rule.kind](problem, rule)
