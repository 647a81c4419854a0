"""
Pessimistic cooperative game over airlines.

A coalition S of airlines secures the revenue of every passenger whose whole
itinerary it operates:

    v(S) = sum of p^j over passengers j with N^j a subset of S

Coalition values live in a dense numpy table indexed by bitmask, bit k
standing for the k-th airline in ascending id order. Every passenger is a
unanimity game on N^j scaled by p^j, so the Shapley value splits each price
equally among N^j (rule R3) and the game is convex.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Mapping, Optional, Tuple

import numpy as np
from scipy.special import comb

from .exceptions import CapacityError, InputError
from .model import AirlineId, AirlinesProblem
from .rules import Allocation, rule_r3, weighted_flights
from .utils.numeric import DEFAULT_TOLERANCE, approx_equal

logger = logging.getLogger(__name__)

MAX_TABLE_PLAYERS = 20
MAX_EXACT_PLAYERS = 12

Coalition = FrozenSet[AirlineId]


def _subset_sums(values: np.ndarray, n: int) -> np.ndarray:
    """Zeta transform: entry S becomes the sum of the input over all subsets of S."""
    table = values.astype(float).copy()
    for k in range(n):
        bit = 1 << k
        view = table.reshape(-1, 2, bit)
        view[:, 1, :] += view[:, 0, :]
    return table


def _popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    sizes = np.zeros(1 << n, dtype=int)
    for k in range(n):
        sizes += (masks >> k) & 1
    return sizes


@dataclass(frozen=True, eq=False)
class CharacteristicFunction:
    """
    TU game over a ground set of airlines.

    Attributes:
        players: Airline ids in ascending order.
        values: Coalition values, ``values[mask]`` for the coalition whose
                members are the players at the set bits of ``mask``.
    """

    players: Tuple[AirlineId, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        values = np.asarray(self.values, dtype=float)
        if values.shape != (1 << len(self.players),):
            raise InputError(f"expected {1 << len(self.players)} coalition values, got {values.shape}")
        if values[0] != 0:
            raise InputError(f"value of the empty coalition must be 0, got {values[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(
        cls,
        players: Iterable[AirlineId],
        values: Mapping[Iterable[AirlineId], float],
    ) -> "CharacteristicFunction":
        """
        Build a game from explicit coalition values; unlisted coalitions are worth 0.

        Example:
            >>> game = CharacteristicFunction.from_mapping([1, 2], {(1, 2): 10.0})
        """
        players = tuple(sorted(players))
        if len(players) > MAX_TABLE_PLAYERS:
            raise CapacityError(f"{len(players)} players exceed the table bound {MAX_TABLE_PLAYERS}")
        table = np.zeros(1 << len(players))
        position = {p: k for k, p in enumerate(players)}
        for coalition, value in values.items():
            mask = 0
            for member in coalition:
                if member not in position:
                    raise InputError(f"coalition member {member!r} is not a player")
                mask |= 1 << position[member]
            table[mask] = value
        return cls(players, table)

    @property
    def n(self) -> int:
        return len(self.players)

    def mask(self, coalition: Iterable[AirlineId]) -> int:
        position = {p: k for k, p in enumerate(self.players)}
        mask = 0
        for member in coalition:
            try:
                mask |= 1 << position[member]
            except KeyError:
                raise InputError(f"coalition member {member!r} is not a player") from None
        return mask

    def coalition(self, mask: int) -> Coalition:
        return frozenset(p for k, p in enumerate(self.players) if mask >> k & 1)

    def value(self, coalition: Iterable[AirlineId]) -> float:
        return float(self.values[self.mask(coalition)])

    def grand_value(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class ConvexityResult:
    """
    Outcome of the convexity check.

    On failure ``witness`` is (i, S, T) with T = S + {k}, S and T not
    containing i, and v(S + {i}) - v(S) > v(T + {i}) - v(T).
    """

    convex: bool
    witness: Optional[Tuple[AirlineId, Coalition, Coalition]] = None


@dataclass(frozen=True)
class CoreResult:
    in_core: bool
    violated_coalition: Optional[Coalition] = None
    efficient: bool = True


@dataclass(frozen=True)
class GameAnalysis:
    """Everything the ``game`` command reports about a problem."""

    game: CharacteristicFunction
    shapley: Allocation
    r3: Allocation
    equals_r3: bool
    convexity: ConvexityResult
    shapley_in_core: bool
    monotone: bool
    superadditive: bool
    weighted_in_core: Optional[bool] = None


def _require_players(game: CharacteristicFunction, bound: int, what: str) -> None:
    if game.n > bound:
        raise CapacityError(f"{what} supports at most {bound} players, got {game.n}")


def pessimistic_game(problem: AirlinesProblem) -> CharacteristicFunction:
    """
    Pessimistic coalition game of an airlines problem.

    Args:
        problem: A valid airlines problem with at most 20 airlines.

    Returns:
        Game with v(S) = sum of p^j over passengers j with N^j inside S.

    Raises:
        CapacityError: if the problem has more than 20 airlines.
    """
    n = len(problem.airlines)
    if n > MAX_TABLE_PLAYERS:
        raise CapacityError(f"{n} airlines exceed the coalition table bound {MAX_TABLE_PLAYERS}")
    position = {airline: k for k, airline in enumerate(problem.airlines)}
    dividends = np.zeros(1 << n)
    for passenger in problem.passengers:
        mask = 0
        for airline in passenger.airlines:
            mask |= 1 << position[airline]
        dividends[mask] += passenger.price
    logger.debug(f"Built pessimistic game over {n} airlines")
    return CharacteristicFunction(problem.airlines, _subset_sums(dividends, n))


def shapley(game: CharacteristicFunction) -> Allocation:
    """
    Exact Shapley value.

    phi_i = sum over S not containing i of |S|!(n-|S|-1)!/n! * (v(S+i) - v(S))

    Raises:
        CapacityError: above 12 players.
    """
    _require_players(game, MAX_EXACT_PLAYERS, "exact Shapley value")
    n = game.n
    if n == 0:
        return Allocation(())
    masks = np.arange(1 << n)
    sizes = _popcounts(n)
    amounts = {}
    for k, player in enumerate(game.players):
        bit = 1 << k
        without = masks[(masks & bit) == 0]
        marginal = game.values[without | bit] - game.values[without]
        coefficient = 1.0 / (n * comb(n - 1, sizes[without]))
        amounts[player] = float(np.sum(coefficient * marginal))
    return Allocation.from_mapping(amounts)


def convexity_check(game: CharacteristicFunction, tol: float = DEFAULT_TOLERANCE) -> ConvexityResult:
    """
    Check supermodularity of the game.

    Uses the equivalent adjacent condition: for all players i != k and every S
    avoiding both, v(S+i+k) - v(S+k) >= v(S+i) - v(S).

    Raises:
        CapacityError: above 12 players.
    """
    _require_players(game, MAX_EXACT_PLAYERS, "convexity check")
    n = game.n
    masks = np.arange(1 << n)
    v = game.values
    slack = tol * max(1.0, float(np.max(np.abs(v))))
    for a in range(n):
        bit_i = 1 << a
        for b in range(n):
            if a == b:
                continue
            bit_k = 1 << b
            base = masks[(masks & (bit_i | bit_k)) == 0]
            small = v[base | bit_i] - v[base]
            large = v[base | bit_i | bit_k] - v[base | bit_k]
            bad = np.nonzero(small > large + slack)[0]
            if bad.size:
                s = int(base[bad[0]])
                witness = (game.players[a], game.coalition(s), game.coalition(s | bit_k))
                return ConvexityResult(False, witness)
    return ConvexityResult(True)


def core_check(
    game: CharacteristicFunction,
    x: Allocation,
    tol: float = DEFAULT_TOLERANCE,
) -> CoreResult:
    """
    Check whether an allocation lies in the core.

    Args:
        game: TU game with at most 20 players.
        x: Amount for every player.
        tol: Tolerance for efficiency and coalition constraints.

    Returns:
        CoreResult; ``violated_coalition`` is the smallest-index coalition S
        with x(S) < v(S), or the grand coalition when only efficiency fails.

    Raises:
        CapacityError: above 20 players.
        InputError: if x misses a player.
    """
    _require_players(game, MAX_TABLE_PLAYERS, "core check")
    missing = [p for p in game.players if p not in x.airlines]
    if missing:
        raise InputError(f"allocation has no amount for player {missing[0]}")
    n = game.n
    singletons = np.zeros(1 << n)
    for k, player in enumerate(game.players):
        singletons[1 << k] = x[player]
    shares = _subset_sums(singletons, n)
    slack = tol * max(1.0, float(np.max(np.abs(game.values))))
    efficient = approx_equal(float(shares[-1]), game.grand_value(), tol)
    short = np.nonzero(shares < game.values - slack)[0]
    if short.size:
        return CoreResult(False, game.coalition(int(short[0])), efficient)
    if not efficient:
        return CoreResult(False, game.coalition((1 << n) - 1), False)
    return CoreResult(True)


def is_monotone(game: CharacteristicFunction, tol: float = DEFAULT_TOLERANCE) -> bool:
    """S inside T implies v(S) <= v(T); checked on single-player additions."""
    masks = np.arange(1 << game.n)
    slack = tol * max(1.0, float(np.max(np.abs(game.values))))
    for k in range(game.n):
        without = masks[(masks & (1 << k)) == 0]
        if np.any(game.values[without | (1 << k)] < game.values[without] - slack):
            return False
    return True


def is_superadditive(game: CharacteristicFunction, tol: float = DEFAULT_TOLERANCE) -> bool:
    """v(S + T) >= v(S) + v(T) for all disjoint S and T."""
    _require_players(game, MAX_EXACT_PLAYERS, "superadditivity check")
    masks = np.arange(1 << game.n)
    v = game.values
    slack = tol * max(1.0, float(np.max(np.abs(v))))
    for s in range(1, 1 << game.n):
        others = masks[(masks & s) == 0]
        if np.any(v[others | s] < v[s] + v[others] - slack):
            return False
    return True


def analyze(problem: AirlinesProblem, tol: float = DEFAULT_TOLERANCE) -> GameAnalysis:
    """
    Build the pessimistic game of a problem and check its claimed properties.

    The weighted flights allocation is tested for core membership when the
    problem carries a weight system; that result is informational.
    """
    game = pessimistic_game(problem)
    value = shapley(game)
    r3 = rule_r3(problem)
    equals_r3 = all(approx_equal(value[i], r3[i], tol) for i in problem.airlines)
    convexity = convexity_check(game, tol)
    in_core = core_check(game, value, tol).in_core
    weighted_in_core = None
    if problem.weights is not None:
        weighted_in_core = core_check(game, weighted_flights(problem), tol).in_core
    logger.info(
        f"Game over {game.n} airlines: Shapley equals R3={equals_r3}, "
        f"convex={convexity.convex}, Shapley in core={in_core}"
    )
    return GameAnalysis(
        game=game,
        shapley=value,
        r3=r3,
        equals_r3=equals_r3,
        convexity=convexity,
        shapley_in_core=in_core,
        monotone=is_monotone(game, tol),
        superadditive=is_superadditive(game, tol),
        weighted_in_core=weighted_in_core,
    )
