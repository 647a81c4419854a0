"""
Airline Proration Toolkit
=========================

Revenue allocation among the airlines of multi-airline itineraries: the
weighted and equal flights rules, IATA's Standard Proration Factor pipeline,
executable fairness axioms with seeded audits, and the pessimistic
cooperative game over airlines.

Example usage:
    >>> from airline_proration import RevenueAllocator, load_problem
    >>> problem = load_problem("data/example2.json")
    >>> RevenueAllocator(["weighted", "equal"]).allocate_frame(problem)
"""

from .allocator import RevenueAllocator
from .exceptions import (
    CapacityError,
    ConfigurationError,
    DegenerateInputError,
    GenerationError,
    InputError,
    PreconditionError,
    ProrationError,
)
from .model import (
    AirlinesProblem,
    Edge,
    FlightKey,
    Itinerary,
    Passenger,
    WeightSystem,
    build_index,
    cancel_empty_flight,
    reassign,
    restrict,
    validate,
)
from .rules import Allocation, RuleKind, RuleSpec, allocate
from .utils.serialization import load_problem

__version__ = "0.1.0"
__all__ = [
    "RevenueAllocator",
    "AirlinesProblem", "Edge", "FlightKey", "Itinerary", "Passenger", "WeightSystem",
    "validate", "build_index", "restrict", "cancel_empty_flight", "reassign",
    "Allocation", "RuleKind", "RuleSpec", "allocate", "load_problem",
    "ProrationError", "InputError", "PreconditionError", "DegenerateInputError",
    "ConfigurationError", "GenerationError", "CapacityError",
]
