"""
Allocation rules organized by how they divide revenue.

Modules:
    - base: Allocation, RuleKind, RuleSpec
    - flights: weighted flights rule W^w, equal flights rule E, passenger-weighted R4
    - pooled: R1 (pooled weights), R5 (pooled flight counts)
    - per_passenger: R2 (airlines not used), R3 (equal among airlines used)
    - dispatch: allocate(problem, rule)
"""

from .base import Allocation, RuleKind, RuleSpec
from .dispatch import allocate
from .flights import equal_flights, rule_r4, split_by_weight, weighted_flights
from .per_passenger import rule_r2, rule_r3
from .pooled import rule_r1, rule_r5

__all__ = [
    "Allocation", "RuleKind", "RuleSpec", "allocate",
    "weighted_flights", "equal_flights", "split_by_weight",
    "rule_r1", "rule_r2", "rule_r3", "rule_r4", "rule_r5",
]
