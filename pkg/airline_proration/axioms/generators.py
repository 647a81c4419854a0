"""
Seeded random generators for problems and axiom transformations.

Every trial draws from its own numpy stream seeded by (seed, trial, purpose),
so trial k produces the same instance whether trials run in sequence, in
parallel or alone.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import GenerationError
from ..model import (
    AirlineId,
    AirlinesProblem,
    Edge,
    FlightKey,
    Itinerary,
    Passenger,
    PassengerId,
    WeightSystem,
    validate,
    with_passengers,
)
from .outcome import AIRPORT_NAMES, Constraints, TrialConfig

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 100
MAX_WALKS = 50
EXTRA_FLIGHTS = 3

# purpose tags of the per-trial streams
PROBLEM_STREAM = 0
TRANSFORM_STREAM = 1
PASSENGER_WEIGHT_STREAM = 2


class _Retry(Exception):
    pass


def trial_rng(config: TrialConfig, trial: int, purpose: int = PROBLEM_STREAM) -> np.random.Generator:
    """Independent stream for one trial and one purpose."""
    if purpose == PROBLEM_STREAM:
        return np.random.default_rng([config.seed, trial])
    return np.random.default_rng([config.seed, trial, purpose])


def _random_weight(rng: np.random.Generator) -> float:
    return round(float(rng.uniform(1.0, 50.0)), 1)


def _random_price(rng: np.random.Generator) -> float:
    return round(float(rng.uniform(1.0, 100.0)), 2)


def _walk(
    rng: np.random.Generator,
    flights: List[FlightKey],
    length: int,
) -> Optional[Tuple[FlightKey, ...]]:
    """Random chain of ``length`` flights visiting no airport twice, or None."""
    start = flights[int(rng.integers(len(flights)))]
    path = [start]
    visited = {start.origin, start.destination}
    while len(path) < length:
        here = path[-1].destination
        options = [f for f in flights if f.origin == here and f.destination not in visited]
        if not options:
            return None
        step = options[int(rng.integers(len(options)))]
        path.append(step)
        visited.add(step.destination)
    return tuple(path)


def _attempt(rng: np.random.Generator, config: TrialConfig, constraints: Constraints) -> AirlinesProblem:
    min_length = constraints.min_itinerary_length
    low = max(2, min_length + 1)
    high = min(config.max_airports, config.max_edges)
    if low > high:
        raise GenerationError(
            f"itineraries of length {min_length} need {low} airports and edges; "
            f"bounds allow {high}"
        )
    n = int(rng.integers(low, high + 1))
    airports = list(AIRPORT_NAMES[:n])

    # a directed cycle through every airport keeps the graph strongly connected
    order = rng.permutation(n)
    edges = [Edge(airports[order[k]], airports[order[(k + 1) % n]]) for k in range(n)]
    taken = set(edges)
    candidates = [Edge(a, b) for a in airports for b in airports if a != b and Edge(a, b) not in taken]
    extra = min(int(rng.integers(0, config.max_edges - n + 1)), len(candidates))
    if extra:
        edges.extend(candidates[k] for k in sorted(rng.choice(len(candidates), size=extra, replace=False)))

    m = int(rng.integers(1, config.max_airlines + 1))
    airlines = list(range(1, m + 1))
    flights = {FlightKey(e, int(rng.integers(1, m + 1))) for e in edges}
    for airline in airlines:
        if not any(f.airline == airline for f in flights):
            flights.add(FlightKey(edges[int(rng.integers(len(edges)))], airline))
    for _ in range(int(rng.integers(0, EXTRA_FLIGHTS + 1))):
        flights.add(FlightKey(edges[int(rng.integers(len(edges)))], int(rng.integers(1, m + 1))))
    flights = sorted(flights)

    weights = WeightSystem({e: _random_weight(rng) for e in sorted(edges)})

    max_length = max(config.max_itinerary, min_length)
    passengers = []
    for pid in range(1, int(rng.integers(1, config.max_passengers + 1)) + 1):
        length = int(rng.integers(min_length, max_length + 1))
        for _ in range(MAX_WALKS):
            path = _walk(rng, flights, length)
            if path is not None:
                break
        else:
            raise _Retry()
        passengers.append(Passenger(pid, Itinerary(path, _random_price(rng))))

    if any(len(flights) - len(p.flights) < constraints.min_unused_flights for p in passengers):
        raise _Retry()

    return AirlinesProblem(tuple(airports), tuple(airlines), tuple(flights), tuple(passengers), weights)


def generate_problem(
    config: TrialConfig,
    constraints: Optional[Constraints] = None,
    trial: int = 0,
) -> AirlinesProblem:
    """
    Generate a valid airlines problem for one trial.

    Airports form a random directed cycle plus extra edges; every edge gets
    an operating airline, every airline at least one flight, and passengers
    follow random simple paths. Weights are uniform in [1, 50] and prices in
    [1, 100].

    Args:
        config: Seed and size bounds.
        constraints: Minimum itinerary length and minimum |F \\ f^j|.
        trial: Trial number; the problem depends only on (config, constraints, trial).

    Returns:
        Problem passing ``model.validate``.

    Raises:
        GenerationError: if the constraints cannot be met within the bounds
            after bounded retries.
    """
    constraints = constraints or Constraints()
    rng = trial_rng(config, trial)
    for attempt in range(MAX_ATTEMPTS):
        try:
            problem = _attempt(rng, config, constraints)
        except _Retry:
            logger.debug(f"Trial {trial}: attempt {attempt + 1} missed the constraints, retrying")
            continue
        report = validate(problem)
        if not report.ok:
            raise GenerationError(f"generated an invalid problem: {report.violations[0]}")
        return problem
    raise GenerationError(
        f"no problem met {constraints} within {MAX_ATTEMPTS} attempts (trial {trial})"
    )


@lru_cache(maxsize=4096)
def cached_problem(config: TrialConfig, constraints: Optional[Constraints], trial: int) -> AirlinesProblem:
    return generate_problem(config, constraints, trial)


def sample_subset(problem: AirlinesProblem, rng: np.random.Generator) -> Tuple[PassengerId, ...]:
    """Random passenger subset T, each passenger kept with probability 1/2."""
    keep = rng.random(len(problem.passengers)) < 0.5
    return tuple(pid for pid, kept in zip(problem.passenger_ids, keep) if kept)


def sample_sigma(
    problem: AirlinesProblem,
    airline: AirlineId,
    rng: np.random.Generator,
) -> Dict[FlightKey, AirlineId]:
    """
    Random reassignment keeping ``airline``'s flights and never handing it others.

    Modes, chosen uniformly:
        - split: every other flight goes to its own fresh airline
        - merge: other flights go to one fresh airline, falling back to the
          next fresh id where an edge already carries it
        - shuffle: each other flight goes to a random other airline, old or
          fresh, avoiding collisions on its edge
    """
    fresh = max(problem.airlines) + 1
    sigma: Dict[FlightKey, AirlineId] = {f: airline for f in problem.flights if f.airline == airline}
    others = [f for f in problem.flights if f.airline != airline]
    used_on_edge: Dict[Edge, set] = {}
    for f in sigma:
        used_on_edge.setdefault(f.edge, set()).add(airline)

    mode = ("split", "merge", "shuffle")[int(rng.integers(3))]
    pool = [i for i in problem.airlines if i != airline] + list(range(fresh, fresh + len(others)))
    for k, flight in enumerate(others):
        taken = used_on_edge.setdefault(flight.edge, {airline})
        if mode == "split":
            target = fresh + k
        elif mode == "merge":
            target = fresh
            while target in taken:
                target += 1
        else:
            options = [i for i in pool if i not in taken]
            target = options[int(rng.integers(len(options)))]
        taken.add(target)
        sigma[flight] = target
    return sigma


def add_twin_passenger(problem: AirlinesProblem, rng: np.random.Generator) -> AirlinesProblem:
    """
    Append a passenger flying the same flights as a random multi-airline
    passenger at a new random price; unchanged if there is none.
    """
    candidates = [p for p in problem.passengers if len(p.airlines) >= 2]
    if not candidates:
        return problem
    original = candidates[int(rng.integers(len(candidates)))]
    ids = problem.passenger_ids
    twin_id = max(ids) + 1 if all(isinstance(pid, int) for pid in ids) else f"{original.id}'"
    twin = Passenger(twin_id, Itinerary(original.flights, _random_price(rng)))
    return with_passengers(problem, problem.passengers + (twin,))


def sample_passenger_weights(
    problem: AirlinesProblem,
    rng: np.random.Generator,
) -> Dict[PassengerId, WeightSystem]:
    """Independent random weight system over all edges for every passenger."""
    edges = problem.edges
    return {pid: WeightSystem({e: _random_weight(rng) for e in edges}) for pid in problem.passenger_ids}
