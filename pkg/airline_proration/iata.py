"""
IATA proration pipeline.

Steps for one ticket:
    1. Worldwide weight of each segment from its Ticketed Point Mileage (TPM)
    2. Adjusted proration factor = TPM x worldwide weight
    3. Regional factor for the (origin region, destination region) pair
    4. Standard Proration Factor (SPF) = adjusted x regional, rounded to a whole number
    5. Amount To Be Prorated (ATBP) split in proportion to the SPFs

The worldwide weight formula applies from March 2025 and is revised every
year, as are the regional factors; regional factor tables are therefore
loaded from configuration.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .exceptions import ConfigurationError, DegenerateInputError, InputError
from .model import AirlineId, AirportCode, Edge, WeightSystem
from .rules import Allocation
from .utils.numeric import RoundingMode, round_whole

logger = logging.getLogger(__name__)

WORLDWIDE_WEIGHT_COEFFICIENT = 6.338826
WORLDWIDE_WEIGHT_EXPONENT = -0.209892
PAPER_TABLE_DECIMALS = 2


@dataclass(frozen=True)
class Segment:
    """
    One flown segment of a ticket.

    Attributes:
        origin: Departure airport.
        destination: Arrival airport.
        airline: Operating airline.
        tpm: Ticketed Point Mileage in miles.
        published_spf: SPF printed in a reference table, pinned in paper-table mode.
    """

    origin: AirportCode
    destination: AirportCode
    airline: AirlineId
    tpm: float
    published_spf: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.tpm) and self.tpm > 0):
            raise InputError(f"segment {self.origin}-{self.destination}: TPM must be positive and finite, got {self.tpm}")

    @property
    def edge(self) -> Edge:
        return Edge(self.origin, self.destination)


@dataclass(frozen=True)
class RegionalFactorTable:
    """Region of each airport and correction factor per (origin, destination) region pair."""

    regions: Mapping[AirportCode, str]
    factors: Mapping[Tuple[str, str], float]

    def __post_init__(self):
        for pair, factor in self.factors.items():
            if not (math.isfinite(factor) and factor > 0):
                raise ConfigurationError(f"regional factor for {pair[0]}-{pair[1]} must be positive and finite, got {factor}")

    def factor_for(self, segment: Segment) -> float:
        """
        Regional factor applying to a segment.

        Raises:
            ConfigurationError: if an airport has no region or the region
                pair has no factor.
        """
        try:
            pair = (self.regions[segment.origin], self.regions[segment.destination])
        except KeyError as exc:
            raise ConfigurationError(f"no region for airport {exc.args[0]}") from None
        try:
            return self.factors[pair]
        except KeyError:
            raise ConfigurationError(f"no regional factor for {pair[0]}-{pair[1]}") from None


@dataclass(frozen=True)
class SPFRecord:
    """
    Intermediate values of one segment.

    ``computed_spf`` is round(adjusted_tpm x regional_factor); ``spf`` is the
    factor actually used, which differs only when a published SPF is pinned.
    """

    segment: Segment
    worldwide_weight: float
    adjusted_tpm: float
    regional_factor: float
    computed_spf: int
    spf: int

    @property
    def pinned(self) -> bool:
        return self.spf != self.computed_spf


@dataclass(frozen=True)
class Settlement:
    amounts: Allocation
    records: Tuple[SPFRecord, ...]


def worldwide_weight(tpm: float) -> float:
    """
    Worldwide weight of a segment: 6.338826 * TPM^(-0.209892).

    The weight decreases with distance: short segments carry higher
    per-mile costs (take-offs, landings, fees).

    Args:
        tpm: Ticketed Point Mileage (> 0).

    Returns:
        Weight at full floating precision.

    Raises:
        InputError: if tpm is not a positive finite number.
    """
    if not (math.isfinite(tpm) and tpm > 0):
        raise InputError(f"TPM must be positive and finite, got {tpm}")
    return WORLDWIDE_WEIGHT_COEFFICIENT * tpm ** WORLDWIDE_WEIGHT_EXPONENT


def adjusted_factor(tpm: float) -> float:
    """Adjusted proration factor TPM x worldwide weight; increasing in TPM."""
    return tpm * worldwide_weight(tpm)


def standard_proration_factor(
    adjusted: float,
    regional: float,
    rounding: RoundingMode = RoundingMode.HALF_AWAY,
) -> int:
    """
    Standard Proration Factor: adjusted x regional rounded to a whole number.

    Args:
        adjusted: Adjusted proration factor (> 0).
        regional: Regional correction factor (> 0).
        rounding: Tie handling (default: half away from zero).

    Raises:
        InputError: if either input is not positive.
    """
    if not (adjusted > 0 and regional > 0):
        raise InputError(f"SPF inputs must be positive, got adjusted={adjusted}, regional={regional}")
    return round_whole(adjusted * regional, rounding)


def prorate(atbp: float, spfs: Sequence[Tuple[AirlineId, float]]) -> Allocation:
    """
    Split the ATBP among airlines in proportion to their segment factors.

    Args:
        atbp: Amount To Be Prorated (> 0).
        spfs: (airline, factor) per segment of one itinerary; an airline
              flying several segments receives the sum of their shares.

    Returns:
        Allocation over the segment airlines, summing to ``atbp``.

    Raises:
        InputError: if atbp is not positive and finite, or a factor is
            negative or infinite.
        DegenerateInputError: if every factor is zero.
    """
    if not (math.isfinite(atbp) and atbp > 0):
        raise InputError(f"ATBP must be positive and finite, got {atbp}")
    if any(not (math.isfinite(factor) and factor >= 0) for _, factor in spfs):
        raise InputError("proration factors must be nonnegative and finite")
    total = sum(factor for _, factor in spfs)
    if total == 0:
        raise DegenerateInputError("all proration factors are zero")
    amounts: Dict[AirlineId, float] = {}
    for airline, factor in spfs:
        amounts[airline] = amounts.get(airline, 0.0) + factor / total * atbp
    return Allocation.from_mapping(amounts)


def tpm_prorate(segments: Sequence[Segment], atbp: float) -> Allocation:
    """Split the ATBP in proportion to raw TPM, without weights or regional factors."""
    return prorate(atbp, [(s.airline, s.tpm) for s in segments])


def settle(
    segments: Sequence[Segment],
    atbp: float,
    factors: RegionalFactorTable,
    paper_table_mode: bool = False,
    rounding: RoundingMode = RoundingMode.HALF_AWAY,
) -> Settlement:
    """
    Run the full proration pipeline for one itinerary.

    Args:
        segments: Flown segments in travel order.
        atbp: Amount To Be Prorated (> 0).
        factors: Regional factor table covering every segment.
        paper_table_mode: Round worldwide weights to two decimals before
                          multiplying and use published SPFs where the
                          segments carry them, reproducing printed tables.
        rounding: Tie handling for the SPF rounding.

    Returns:
        Settlement with per-airline amounts and one SPFRecord per segment.

    Raises:
        ConfigurationError: if a region mapping or factor is missing.
    """
    if not segments:
        raise InputError("an itinerary needs at least one segment")
    records = []
    for segment in segments:
        weight = worldwide_weight(segment.tpm)
        if paper_table_mode:
            weight = round(weight, PAPER_TABLE_DECIMALS)
        adjusted = segment.tpm * weight
        regional = factors.factor_for(segment)
        computed = standard_proration_factor(adjusted, regional, rounding)
        spf = computed
        if paper_table_mode and segment.published_spf is not None:
            spf = int(segment.published_spf)
            if spf != computed:
                logger.warning(
                    f"Published SPF {spf} for {segment.origin}-{segment.destination} "
                    f"differs from computed {computed}; using published value"
                )
        records.append(SPFRecord(segment, weight, adjusted, regional, computed, spf))

    amounts = prorate(atbp, [(r.segment.airline, r.spf) for r in records])
    logger.info(f"Settled {len(records)} segments, ATBP {atbp}")
    return Settlement(amounts, tuple(records))


def spf_weights(records: Sequence[SPFRecord]) -> WeightSystem:
    """
    Weight system assigning each settled edge its SPF.

    With these weights the weighted flights rule reproduces the settlement.
    """
    return WeightSystem({r.segment.edge: float(r.spf) for r in records})
