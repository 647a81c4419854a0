"""
Allocation and rule selection types.

An allocation divides the total amount paid by the passengers among the
airlines of the problem; a RuleSpec names one of the allocation rules and
carries the weight data it needs.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Tuple

import pandas as pd

from ..exceptions import ConfigurationError
from ..model import AirlineId, AirlinesProblem, PassengerId, WeightSystem


@dataclass(frozen=True)
class Allocation:
    """
    Amount per airline, ordered by ascending airline id.

    Example:
        >>> alloc = Allocation.from_mapping({2: 10.0, 1: 0.0})
        >>> alloc[2], alloc.total()
        (10.0, 10.0)
    """

    items: Tuple[Tuple[AirlineId, float], ...]

    @classmethod
    def from_mapping(cls, amounts: Mapping[AirlineId, float]) -> "Allocation":
        return cls(tuple(sorted((int(i), float(x)) for i, x in amounts.items())))

    @classmethod
    def zeros(cls, airlines: Iterable[AirlineId]) -> "Allocation":
        return cls.from_mapping({i: 0.0 for i in airlines})

    @property
    def airlines(self) -> Tuple[AirlineId, ...]:
        return tuple(i for i, _ in self.items)

    def __getitem__(self, airline: AirlineId) -> float:
        for i, amount in self.items:
            if i == airline:
                return amount
        raise KeyError(airline)

    def get(self, airline: AirlineId, default: float = 0.0) -> float:
        try:
            return self[airline]
        except KeyError:
            return default

    def __len__(self) -> int:
        return len(self.items)

    def total(self) -> float:
        return sum(x for _, x in self.items)

    def as_dict(self) -> Dict[AirlineId, float]:
        return dict(self.items)

    def to_series(self, name: Optional[str] = None) -> pd.Series:
        """Amounts as a pandas Series indexed by airline id."""
        return pd.Series(
            [x for _, x in self.items],
            index=pd.Index(self.airlines, name="airline"),
            name=name,
            dtype=float,
        )


class RuleKind(str, Enum):
    """Allocation rules: weighted/equal flights and the five counterexample rules."""

    WEIGHTED = "weighted"
    EQUAL = "equal"
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"
    R4 = "r4"
    R5 = "r5"

    @property
    def needs_weights(self) -> bool:
        return self in (RuleKind.WEIGHTED, RuleKind.R1, RuleKind.R2)

    @property
    def needs_passenger_weights(self) -> bool:
        return self is RuleKind.R4


@dataclass(frozen=True)
class RuleSpec:
    """
    Rule selector.

    Weight-based rules use ``weights`` when given and fall back to the weight
    system attached to the problem. R4 needs one weight system per passenger.
    """

    kind: RuleKind
    weights: Optional[WeightSystem] = None
    passenger_weights: Optional[Mapping[PassengerId, WeightSystem]] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", RuleKind(self.kind))
        if self.passenger_weights is not None:
            object.__setattr__(self, "passenger_weights", dict(self.passenger_weights))

    @classmethod
    def from_name(
        cls,
        name: str,
        weights: Optional[WeightSystem] = None,
        passenger_weights: Optional[Mapping[PassengerId, WeightSystem]] = None,
    ) -> "RuleSpec":
        try:
            kind = RuleKind(name)
        except ValueError:
            choices = ", ".join(k.value for k in RuleKind)
            raise ConfigurationError(f"unknown rule {name!r}; expected one of {choices}") from None
        return cls(kind, weights, passenger_weights)

    @property
    def name(self) -> str:
        return self.kind.value

    def resolve_weights(self, problem: AirlinesProblem) -> WeightSystem:
        """
        Weight system used for ``problem``.

        Raises:
            ConfigurationError: if neither the rule nor the problem has one.
        """
        weights = self.weights if self.weights is not None else problem.weights
        if weights is None:
            raise ConfigurationError(f"rule {self.name} requires a weight system")
        return weights

    def resolve_passenger_weights(self, problem: AirlinesProblem) -> Mapping[PassengerId, WeightSystem]:
        if self.passenger_weights is None:
            raise ConfigurationError(f"rule {self.name} requires per-passenger weight systems")
        return self.passenger_weights
