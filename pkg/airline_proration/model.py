"""
Airlines problem data model.

An airlines problem A = (N, F, M, (f^j, p^j)) lives on a directed airport
graph: N is the set of airlines, F the flights they operate (an edge plus the
operating airline), and every passenger j in M flies the chain of flights f^j
and pays p^j. This module holds the value types, validation against the model
assumptions, the derived index, and the three transformations the axioms are
stated on:

    - restrict: keep only a subset of passengers (A|T)
    - cancel_empty_flight: remove a flight nobody uses
    - reassign: hand flights over to other airlines (A^sigma)

All values are immutable; every operation returns a new problem.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from .exceptions import ConfigurationError, InputError, PreconditionError

logger = logging.getLogger(__name__)

AirportCode = str
AirlineId = int
PassengerId = int

# Invariant names used in validation reports
EMPTY_AIRPORT = "empty airport code"
DUPLICATE_AIRPORT = "duplicate airport"
INVALID_AIRLINE = "invalid airline id"
DUPLICATE_AIRLINE = "duplicate airline"
DUPLICATE_FLIGHT = "duplicate flight"
SELF_LOOP = "self-loop edge"
UNKNOWN_AIRPORT = "unknown airport"
UNKNOWN_AIRLINE = "unknown airline"
AIRLINE_WITHOUT_FLIGHTS = "airline without flights"
NOT_CONNECTED = "airports not connected"
DUPLICATE_PASSENGER = "duplicate passenger id"
EMPTY_ITINERARY = "empty itinerary"
NONPOSITIVE_PRICE = "nonpositive price"
FLIGHT_NOT_IN_F = "itinerary flight not in F"
NOT_A_PATH = "itinerary not a path"
REPEATED_FLIGHT = "duplicate flight in itinerary"
MISSING_WEIGHT = "missing edge weight"
NONPOSITIVE_WEIGHT = "nonpositive weight"


@dataclass(frozen=True, order=True)
class Edge:
    """Directed airport pair (origin, destination)."""

    origin: AirportCode
    destination: AirportCode

    def __str__(self) -> str:
        return f"({self.origin},{self.destination})"


@dataclass(frozen=True, order=True)
class FlightKey:
    """A flight: an edge operated by one airline."""

    edge: Edge
    airline: AirlineId

    @classmethod
    def of(cls, origin: AirportCode, destination: AirportCode, airline: AirlineId) -> "FlightKey":
        return cls(Edge(origin, destination), int(airline))

    @property
    def origin(self) -> AirportCode:
        return self.edge.origin

    @property
    def destination(self) -> AirportCode:
        return self.edge.destination

    def __str__(self) -> str:
        return f"({self.edge},{self.airline})"


@dataclass(frozen=True)
class Itinerary:
    """Ordered flights f^j taken by a passenger and the price p^j paid."""

    flights: Tuple[FlightKey, ...]
    price: float

    def __post_init__(self):
        object.__setattr__(self, "flights", tuple(self.flights))
        object.__setattr__(self, "price", float(self.price))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(f.edge for f in self.flights)


@dataclass(frozen=True)
class Passenger:
    """A passenger id paired with its itinerary."""

    id: PassengerId
    itinerary: Itinerary

    @property
    def flights(self) -> Tuple[FlightKey, ...]:
        return self.itinerary.flights

    @property
    def price(self) -> float:
        return self.itinerary.price

    @cached_property
    def airlines(self) -> FrozenSet[AirlineId]:
        """N^j, the airlines operating this passenger's flights."""
        return frozenset(f.airline for f in self.flights)

    def segment(self, airline: AirlineId) -> Tuple[FlightKey, ...]:
        """f_i^j, the flights of this passenger operated by ``airline``."""
        return tuple(f for f in self.flights if f.airline == airline)


@dataclass(frozen=True)
class WeightSystem:
    """Positive weight per edge, independent of the operating airline."""

    weights: Mapping[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "weights", {e: float(w) for e, w in self.weights.items()})

    @classmethod
    def uniform(cls, edges: Iterable[Edge], value: float = 1.0) -> "WeightSystem":
        return cls({e: value for e in edges})

    def weight(self, edge: Edge) -> float:
        """
        Look up the weight of an edge.

        Raises:
            ConfigurationError: if the edge carries no weight.
        """
        try:
            return self.weights[edge]
        except KeyError:
            raise ConfigurationError(f"no weight for edge {edge}") from None

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.weights

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.weights))

    def scaled(self, factor: float) -> "WeightSystem":
        return WeightSystem({e: w * factor for e, w in self.weights.items()})

    def without(self, edge: Edge) -> "WeightSystem":
        return WeightSystem({e: w for e, w in self.weights.items() if e != edge})


@dataclass(frozen=True)
class Index:
    """
    Derived view of a problem.

    Attributes:
        edges_by_airline: E_i, edges operated by each airline.
        flights_by_airline: f_i, flights operated by each airline.
        passengers_by_airline: M_i, passengers served by each airline.
        airlines_by_passenger: N^j, airlines flying each passenger.
        segments: f_i^j for every (passenger, airline) pair with f_i^j nonempty.
        used_flights: union of all itineraries.
    """

    edges_by_airline: Mapping[AirlineId, FrozenSet[Edge]]
    flights_by_airline: Mapping[AirlineId, Tuple[FlightKey, ...]]
    passengers_by_airline: Mapping[AirlineId, Tuple[PassengerId, ...]]
    airlines_by_passenger: Mapping[PassengerId, FrozenSet[AirlineId]]
    segments: Mapping[Tuple[PassengerId, AirlineId], Tuple[FlightKey, ...]]
    used_flights: FrozenSet[FlightKey]

    def segment(self, passenger: PassengerId, airline: AirlineId) -> Tuple[FlightKey, ...]:
        return self.segments.get((passenger, airline), ())

    def null_airlines(self) -> Tuple[AirlineId, ...]:
        """Airlines with M_i empty."""
        return tuple(i for i, served in self.passengers_by_airline.items() if not served)


@dataclass(frozen=True)
class AirlinesProblem:
    """
    An airlines problem over a fixed airport graph.

    Airports, airlines and flights are stored as sorted tuples so that equal
    problems compare equal regardless of input order; passengers keep their
    given order.
    """

    airports: Tuple[AirportCode, ...]
    airlines: Tuple[AirlineId, ...]
    flights: Tuple[FlightKey, ...]
    passengers: Tuple[Passenger, ...] = ()
    weights: Optional[WeightSystem] = None

    def __post_init__(self):
        object.__setattr__(self, "airports", tuple(sorted(self.airports)))
        object.__setattr__(self, "airlines", tuple(sorted(self.airlines)))
        object.__setattr__(self, "flights", tuple(sorted(self.flights)))
        object.__setattr__(self, "passengers", tuple(self.passengers))

    @cached_property
    def flight_set(self) -> FrozenSet[FlightKey]:
        return frozenset(self.flights)

    @property
    def passenger_ids(self) -> Tuple[PassengerId, ...]:
        return tuple(p.id for p in self.passengers)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted({f.edge for f in self.flights}))

    @cached_property
    def index(self) -> Index:
        return build_index(self)

    def passenger(self, passenger_id: PassengerId) -> Passenger:
        for p in self.passengers:
            if p.id == passenger_id:
                return p
        raise InputError(f"unknown passenger {passenger_id!r}")


@dataclass(frozen=True)
class Violation:
    """A broken model invariant and the element breaking it."""

    invariant: str
    element: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def invariants(self) -> List[str]:
        return [v.invariant for v in self.violations]


def total_payments(problem: AirlinesProblem) -> float:
    """Sum of prices paid by all passengers."""
    return sum(p.price for p in problem.passengers)


def _first_unreachable_pair(problem: AirlinesProblem) -> Optional[Tuple[AirportCode, AirportCode]]:
    graph = nx.DiGraph()
    graph.add_nodes_from(problem.airports)
    graph.add_edges_from(
        (f.origin, f.destination) for f in problem.flights
        if f.origin in graph and f.destination in graph
    )
    if graph.number_of_nodes() < 2 or nx.is_strongly_connected(graph):
        return None
    for origin in sorted(graph.nodes):
        reachable = nx.descendants(graph, origin)
        for destination in sorted(graph.nodes):
            if destination != origin and destination not in reachable:
                return origin, destination
    return None


def validate(problem: AirlinesProblem) -> ValidationReport:
    """
    Check every model assumption of an airlines problem.

    Args:
        problem: Arbitrary parsed problem.

    Returns:
        ValidationReport listing each violated invariant with the offending
        element. An ok report means the problem satisfies all assumptions:
        every itinerary is a chain of flights in F with a positive price,
        every airline operates a flight, every pair of airports is connected,
        and the weight system (if any) covers all edges with positive weights.
    """
    violations: List[Violation] = []

    def report(invariant: str, element) -> None:
        violations.append(Violation(invariant, str(element)))

    airports = set()
    for code in problem.airports:
        if not isinstance(code, str) or not code:
            report(EMPTY_AIRPORT, repr(code))
        elif code in airports:
            report(DUPLICATE_AIRPORT, code)
        airports.add(code)

    airlines = set()
    for airline in problem.airlines:
        if not isinstance(airline, int) or isinstance(airline, bool) or airline < 1:
            report(INVALID_AIRLINE, airline)
        elif airline in airlines:
            report(DUPLICATE_AIRLINE, airline)
        airlines.add(airline)

    seen_flights = set()
    operating = set()
    for flight in problem.flights:
        if flight in seen_flights:
            report(DUPLICATE_FLIGHT, flight)
        seen_flights.add(flight)
        operating.add(flight.airline)
        if flight.origin == flight.destination:
            report(SELF_LOOP, flight)
        for code in (flight.origin, flight.destination):
            if code not in airports:
                report(UNKNOWN_AIRPORT, f"{code} in {flight}")
        if flight.airline not in airlines:
            report(UNKNOWN_AIRLINE, f"{flight.airline} in {flight}")

    for airline in sorted(airlines - operating, key=str):
        report(AIRLINE_WITHOUT_FLIGHTS, airline)

    pair = _first_unreachable_pair(problem)
    if pair is not None:
        report(NOT_CONNECTED, f"{pair[0]} -> {pair[1]}")

    passenger_ids = set()
    for passenger in problem.passengers:
        if passenger.id in passenger_ids:
            report(DUPLICATE_PASSENGER, passenger.id)
        passenger_ids.add(passenger.id)
        flights = passenger.flights
        if not flights:
            report(EMPTY_ITINERARY, passenger.id)
        if not (math.isfinite(passenger.price) and passenger.price > 0):
            report(NONPOSITIVE_PRICE, f"passenger {passenger.id}: {passenger.price}")
        if len(set(flights)) != len(flights):
            report(REPEATED_FLIGHT, f"passenger {passenger.id}")
        for flight in flights:
            if flight not in problem.flight_set:
                report(FLIGHT_NOT_IN_F, f"passenger {passenger.id}: {flight}")
        for previous, current in zip(flights, flights[1:]):
            if previous.destination != current.origin:
                report(NOT_A_PATH, f"passenger {passenger.id}: {previous} then {current}")
                break

    if problem.weights is not None:
        for edge in problem.edges:
            if edge not in problem.weights:
                report(MISSING_WEIGHT, edge)
        for edge, weight in sorted(problem.weights.weights.items()):
            if not (math.isfinite(weight) and weight > 0):
                report(NONPOSITIVE_WEIGHT, f"{edge}: {weight}")

    return ValidationReport(tuple(violations))


def build_index(problem: AirlinesProblem) -> Index:
    """
    Derive E_i, f_i, M_i, N^j and f_i^j from a problem.

    Args:
        problem: A valid airlines problem.

    Returns:
        Index over the problem. Pure function of ``problem``.
    """
    edges: Dict[AirlineId, set] = {i: set() for i in problem.airlines}
    flights: Dict[AirlineId, List[FlightKey]] = {i: [] for i in problem.airlines}
    for flight in problem.flights:
        edges.setdefault(flight.airline, set()).add(flight.edge)
        flights.setdefault(flight.airline, []).append(flight)

    served: Dict[AirlineId, List[PassengerId]] = {i: [] for i in edges}
    by_passenger: Dict[PassengerId, FrozenSet[AirlineId]] = {}
    segments: Dict[Tuple[PassengerId, AirlineId], Tuple[FlightKey, ...]] = {}
    used = set()
    for passenger in problem.passengers:
        by_passenger[passenger.id] = passenger.airlines
        used.update(passenger.flights)
        for airline in sorted(passenger.airlines):
            segments[(passenger.id, airline)] = passenger.segment(airline)
            served.setdefault(airline, []).append(passenger.id)

    return Index(
        edges_by_airline={i: frozenset(e) for i, e in edges.items()},
        flights_by_airline={i: tuple(f) for i, f in flights.items()},
        passengers_by_airline={i: tuple(m) for i, m in served.items()},
        airlines_by_passenger=by_passenger,
        segments=segments,
        used_flights=frozenset(used),
    )


def with_passengers(problem: AirlinesProblem, passengers: Iterable[Passenger]) -> AirlinesProblem:
    """Same airports, airlines, flights and weights with a new passenger list."""
    return replace(problem, passengers=tuple(passengers))


def restrict(problem: AirlinesProblem, passenger_ids: Iterable[PassengerId]) -> AirlinesProblem:
    """
    Restrict a problem to a subset T of its passengers (A|T).

    Args:
        problem: Airlines problem.
        passenger_ids: Passenger ids forming T.

    Returns:
        Problem with the same airports, airlines, flights and weights, keeping
        only the passengers in T in their original order.

    Raises:
        InputError: if T names a passenger not in the problem.
    """
    wanted = set(passenger_ids)
    unknown = wanted - set(problem.passenger_ids)
    if unknown:
        raise InputError(f"unknown passengers in restriction: {sorted(unknown, key=str)}")
    kept = [p for p in problem.passengers if p.id in wanted]
    logger.debug(f"Restricted problem to {len(kept)} of {len(problem.passengers)} passengers")
    return with_passengers(problem, kept)


def empty_flights(problem: AirlinesProblem) -> Tuple[FlightKey, ...]:
    """Flights of F taken by no passenger."""
    used = problem.index.used_flights
    return tuple(f for f in problem.flights if f not in used)


def cancel_empty_flight(problem: AirlinesProblem, flight: FlightKey) -> AirlinesProblem:
    """
    Cancel a flight that no passenger takes (the problem Ã).

    The operating airline leaves N when the canceled flight was its only one.
    The edge's weight is dropped when no airline operates the edge anymore.
    A canceled flight that breaks the connectivity assumption is logged, not
    rejected.

    Args:
        problem: Airlines problem.
        flight: Flight to cancel.

    Returns:
        The problem without ``flight``.

    Raises:
        InputError: if ``flight`` is not in F.
        PreconditionError: if a passenger takes ``flight``.
    """
    if flight not in problem.flight_set:
        raise InputError(f"flight {flight} is not in F")
    if flight in problem.index.used_flights:
        raise PreconditionError(f"flight {flight} is not empty")

    flights = tuple(f for f in problem.flights if f != flight)
    airlines = problem.airlines
    if not any(f.airline == flight.airline for f in flights):
        airlines = tuple(i for i in airlines if i != flight.airline)
    weights = problem.weights
    if weights is not None and not any(f.edge == flight.edge for f in flights):
        weights = weights.without(flight.edge)

    result = replace(problem, airlines=airlines, flights=flights, weights=weights)
    logger.debug(f"Canceled empty flight {flight}; {len(airlines)} airlines remain")
    if NOT_CONNECTED in validate(result).invariants():
        logger.warning(f"Canceling {flight} breaks airport connectivity")
    return result


def cancel_flights(problem: AirlinesProblem, flights: Iterable[FlightKey]) -> AirlinesProblem:
    """Cancel several empty flights one after another."""
    for flight in flights:
        problem = cancel_empty_flight(problem, flight)
    return problem


def reassign(problem: AirlinesProblem, sigma: Mapping[FlightKey, AirlineId]) -> AirlinesProblem:
    """
    Reassign every flight to the airline chosen by sigma (the problem A^sigma).

    Args:
        problem: Airlines problem.
        sigma: New operating airline for each flight of F.

    Returns:
        Problem whose flights are (e, sigma(e, i)); the airline set is every
        airline receiving a flight; itineraries are rewritten flight by flight
        with prices and weights unchanged.

    Raises:
        InputError: if sigma misses a flight of F, names an invalid airline id,
            or maps two flights of the same edge to the same airline.
    """
    missing = [f for f in problem.flights if f not in sigma]
    if missing:
        raise InputError(f"sigma is not defined on {missing[0]}")

    def moved(flight: FlightKey) -> FlightKey:
        try:
            target = sigma[flight]
        except KeyError:
            raise InputError(f"sigma is not defined on {flight}") from None
        if isinstance(target, bool) or int(target) != target or target < 1:
            raise InputError(f"sigma maps {flight} to invalid airline {target!r}")
        return FlightKey(flight.edge, int(target))

    flights = [moved(f) for f in problem.flights]
    if len(set(flights)) != len(flights):
        seen = set()
        for f in flights:
            if f in seen:
                raise InputError(f"sigma creates duplicate flight {f}")
            seen.add(f)

    passengers = [
        Passenger(p.id, Itinerary(tuple(moved(f) for f in p.flights), p.price))
        for p in problem.passengers
    ]
    airlines = tuple(sorted({f.airline for f in flights}))
    logger.debug(f"Reassigned {len(flights)} flights to {len(airlines)} airlines")
    return AirlinesProblem(
        airports=problem.airports,
        airlines=airlines,
        flights=tuple(flights),
        passengers=tuple(passengers),
        weights=problem.weights,
    )
