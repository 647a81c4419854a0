"""Shared fixtures: the worked examples used across the suite."""

from pathlib import Path

import pytest

from airline_proration.iata import RegionalFactorTable, Segment
from airline_proration.model import AirlinesProblem, Edge, FlightKey, Itinerary, Passenger, WeightSystem

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Example 2 edge weights
EXAMPLE_WEIGHTS = {
    ("a", "b"): 10, ("b", "a"): 10, ("b", "c"): 15, ("b", "e"): 12, ("c", "a"): 20, ("d", "b"): 15,
    ("d", "e"): 25, ("d", "f"): 20, ("e", "c"): 20, ("e", "f"): 30, ("f", "d"): 20,
}

WEIGHTED_EXPECTED = {1: 0.0, 2: 14.6636, 3: 18.2308, 4: 17.9447, 5: 30.1609}
EQUAL_EXPECTED = {1: 0.0, 2: 21.5, 3: 15.5, 4: 14.0, 5: 30.0}
R3_EXPECTED = {1: 0.0, 2: 21.5, 3: 19.5, 4: 14.0, 5: 26.0}


def fk(origin, destination, airline):
    return FlightKey.of(origin, destination, airline)


def passenger(pid, price, *flights):
    return Passenger(pid, Itinerary(tuple(fk(*f) for f in flights), price))


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def example_weights():
    return WeightSystem({Edge(a, b): w for (a, b), w in EXAMPLE_WEIGHTS.items()})


@pytest.fixture
def example_problem(example_weights):
    """Six airports, five airlines, four passengers; airline 1 serves nobody."""
    flights = [
        fk("a", "b", 2), fk("b", "a", 2), fk("b", "c", 3), fk("b", "e", 2), fk("b", "e", 4), fk("c", "a", 5),
        fk("d", "b", 2), fk("d", "e", 3), fk("d", "f", 1), fk("e", "c", 5), fk("e", "f", 4), fk("f", "d", 5),
    ]
    passengers = [
        passenger(1, 12, ("a", "b", 2), ("b", "e", 4), ("e", "c", 5)),
        passenger(2, 30, ("b", "e", 2), ("e", "f", 4), ("f", "d", 5)),
        passenger(3, 24, ("d", "e", 3), ("e", "c", 5), ("c", "a", 5)),
        passenger(4, 15, ("a", "b", 2), ("b", "c", 3)),
    ]
    return AirlinesProblem(
        airports=tuple("abcdef"),
        airlines=(1, 2, 3, 4, 5),
        flights=tuple(flights),
        passengers=tuple(passengers),
        weights=example_weights,
    )


@pytest.fixture
def ratio_pair_problem():
    """
    Two itineraries of 600 and 800 sharing the flights of airlines 1 and 2,
    airline 2's leg weighing twice airline 1's.
    """
    flights = [fk("a", "b", 1), fk("b", "c", 2), fk("c", "d", 3), fk("d", "a", 3)]
    weights = WeightSystem({
        Edge("a", "b"): 100, Edge("b", "c"): 200, Edge("c", "d"): 50, Edge("d", "a"): 50,
    })
    passengers = [
        passenger(1, 600, ("a", "b", 1), ("b", "c", 2)),
        passenger(2, 800, ("a", "b", 1), ("b", "c", 2), ("c", "d", 3)),
    ]
    return AirlinesProblem(tuple("abcd"), (1, 2, 3), tuple(flights), tuple(passengers), weights)


@pytest.fixture
def example_segments():
    return [
        Segment("MAD", "FRA", 1, 893, published_spf=1299),
        Segment("FRA", "NBO", 2, 3690, published_spf=4760),
    ]


@pytest.fixture
def example_factors():
    return RegionalFactorTable(
        regions={"MAD": "EUR", "FRA": "EUR", "NBO": "AFR"},
        factors={("EUR", "EUR"): 0.97, ("EUR", "AFR"): 1.142},
    )
