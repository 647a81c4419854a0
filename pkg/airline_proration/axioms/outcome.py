"""
Check outcomes, counterexample witnesses and trial configuration.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping, Optional, Union

from ..exceptions import ConfigurationError, InputError
from ..model import AirlineId, AirlinesProblem
from ..rules import Allocation, RuleSpec
from ..utils.numeric import DEFAULT_TOLERANCE

RuleLike = Union[RuleSpec, str, Callable[[AirlinesProblem], Allocation]]

RULE_VALIDITY = "rule_validity"
AIRPORT_NAMES = "abcdefghijklmnopqrstuvwxyz"


class AxiomId(str, Enum):
    """The seven fairness axioms a rule may satisfy."""

    ADDITIVITY = "additivity"
    NULL_AIRLINE = "null_airline"
    IND_EMPTY_FLIGHTS = "ind_empty_flights"
    FLIGHTS_EQUIVALENCE = "flights_equivalence"
    IND_OTHER_AIRLINES = "ind_other_airlines"
    RATIO_PRESERVATION = "ratio_preservation"
    PAIRWISE_HOMOGENEITY = "pairwise_homogeneity"

    @property
    def needs_weights(self) -> bool:
        return self is AxiomId.PAIRWISE_HOMOGENEITY


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


def rule_name(rule: RuleLike) -> str:
    if isinstance(rule, RuleSpec):
        return rule.name
    if isinstance(rule, str):
        return rule
    return getattr(rule, "__name__", repr(rule))


@dataclass(frozen=True)
class Witness:
    """
    Self-contained counterexample.

    Replaying the check named by ``axiom`` on ``problem`` with the
    ``transformation`` data and ``tol`` reproduces ``lhs`` and ``rhs``.

    Attributes:
        axiom: Axiom id value, or ``rule_validity``.
        rule: Rule that was checked.
        problem: Problem the check ran on.
        transformation: Check arguments (subset T, canceled flight, sigma,
                        passenger and airline pairs, lambda).
        airline: Airline whose amounts disagree, if any.
        lhs: Left side of the violated identity.
        rhs: Right side of the violated identity.
        tol: Tolerance in force.
    """

    axiom: str
    rule: Any
    problem: AirlinesProblem
    transformation: Mapping[str, Any]
    airline: Optional[AirlineId]
    lhs: float
    rhs: float
    tol: float = DEFAULT_TOLERANCE

    @property
    def difference(self) -> float:
        return self.lhs - self.rhs

    @property
    def rule_name(self) -> str:
        return rule_name(self.rule)


@dataclass(frozen=True)
class CheckOutcome:
    verdict: Verdict
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise InputError("a failed check must carry a witness")

    @classmethod
    def passed(cls) -> "CheckOutcome":
        return cls(Verdict.PASS)

    @classmethod
    def inapplicable(cls) -> "CheckOutcome":
        return cls(Verdict.INAPPLICABLE)

    @classmethod
    def failed(cls, witness: Witness) -> "CheckOutcome":
        return cls(Verdict.FAIL, witness)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAIL


@dataclass(frozen=True)
class TrialConfig:
    """
    Seeded audit settings.

    Attributes:
        seed: Base seed; trial k draws from the stream (seed, k).
        trials: Number of generated instances.
        max_airports: Upper bound on |V| (at most 26).
        max_airlines: Upper bound on |N|.
        max_edges: Upper bound on the number of edges.
        max_passengers: Upper bound on |M|.
        max_itinerary: Upper bound on |f^j|.
        tolerance: Relative tolerance of every comparison.
    """

    seed: int = 0
    trials: int = 1000
    max_airports: int = 6
    max_airlines: int = 6
    max_edges: int = 8
    max_passengers: int = 5
    max_itinerary: int = 3
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.seed < 0:
            raise ConfigurationError(f"seed must be nonnegative, got {self.seed}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be at least 1, got {self.trials}")
        if not 2 <= self.max_airports <= len(AIRPORT_NAMES):
            raise ConfigurationError(f"max_airports must be in [2, {len(AIRPORT_NAMES)}], got {self.max_airports}")
        if self.max_edges < 2:
            raise ConfigurationError(f"max_edges must be at least 2, got {self.max_edges}")
        for name in ("max_airlines", "max_passengers", "max_itinerary"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be at least 1, got {getattr(self, name)}")
        if not self.tolerance > 0:
            raise ConfigurationError(f"tolerance must be positive, got {self.tolerance}")


@dataclass(frozen=True)
class Constraints:
    """Domain restrictions honored by the generator."""

    min_itinerary_length: int = 1
    min_unused_flights: int = 0

    def __post_init__(self):
        if self.min_itinerary_length < 1 or self.min_unused_flights < 0:
            raise ConfigurationError(
                f"invalid constraints: min_itinerary_length={self.min_itinerary_length}, "
                f"min_unused_flights={self.min_unused_flights}"
            )
