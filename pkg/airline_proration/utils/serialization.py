"""
JSON codecs.

Reads problem, weight, regional factor and segment files, and renders
command payloads with sorted keys and six fixed decimals so identical runs
produce byte-identical output.
"""

import json
import math
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..exceptions import InputError
from ..iata import RegionalFactorTable, Segment, Settlement
from ..model import AirlinesProblem, Edge, FlightKey, Itinerary, Passenger, WeightSystem
from ..rules import Allocation

PathLike = Union[str, Path]

DECIMALS = 6
_FLOAT_MARK = re.compile(r'"@@(-?[0-9.]+|null)@@"')


def load_json(path: PathLike) -> Any:
    """
    Parse a JSON file.

    Raises:
        InputError: if the file cannot be read or is not valid JSON; the
            message carries the path, line and column.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(data: Mapping, key: str, where: str) -> Any:
    if not isinstance(data, Mapping):
        raise InputError(f"{where}: expected an object")
    try:
        return data[key]
    except KeyError:
        raise InputError(f"{where}: missing field {key!r}") from None


def _airline(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: airline must be an integer, got {value!r}")
    return value


def _airport(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise InputError(f"{where}: airport must be a string, got {value!r}")
    return value


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    return float(value)


def flight_from_dict(data: Mapping, where: str = "flight") -> FlightKey:
    return FlightKey(
        Edge(_airport(_field(data, "from", where), where), _airport(_field(data, "to", where), where)),
        _airline(_field(data, "airline", where), where),
    )


def flight_to_dict(flight: FlightKey) -> Dict[str, Any]:
    return {"from": flight.origin, "to": flight.destination, "airline": flight.airline}


def weights_from_list(entries: List[Mapping], where: str = "weights") -> WeightSystem:
    """Weight system from ``[{"from": A, "to": B, "w": x}, ...]``."""
    if not isinstance(entries, list):
        raise InputError(f"{where}: expected a list")
    weights = {}
    for k, entry in enumerate(entries):
        here = f"{where}[{k}]"
        edge = Edge(_airport(_field(entry, "from", here), here), _airport(_field(entry, "to", here), here))
        weights[edge] = _number(_field(entry, "w", here), here)
    return WeightSystem(weights)


def weights_to_list(weights: WeightSystem) -> List[Dict[str, Any]]:
    return [{"from": e.origin, "to": e.destination, "w": weights.weight(e)} for e in weights.edges]


def problem_from_dict(data: Mapping) -> AirlinesProblem:
    """
    Build a problem from the problem file format.

    Only the shape of the document is checked here; model assumptions are
    reported by ``model.validate``.

    Raises:
        InputError: if a field is missing or has the wrong type.
    """
    airports = [_airport(a, "airports") for a in _field(data, "airports", "problem")]
    airlines = [_airline(i, "airlines") for i in _field(data, "airlines", "problem")]
    flights = [flight_from_dict(f, f"flights[{k}]") for k, f in enumerate(_field(data, "flights", "problem"))]

    passengers = []
    for k, entry in enumerate(data.get("passengers", [])):
        here = f"passengers[{k}]"
        itinerary = [
            flight_from_dict(f, f"{here}.itinerary[{n}]")
            for n, f in enumerate(_field(entry, "itinerary", here))
        ]
        price = _number(_field(entry, "price", here), here)
        pid = _field(entry, "id", here)
        if isinstance(pid, bool) or not isinstance(pid, (int, str)):
            raise InputError(f"{here}: passenger id must be an integer or string, got {pid!r}")
        passengers.append(Passenger(pid, Itinerary(tuple(itinerary), price)))

    weights = None
    if data.get("weights") is not None:
        weights = weights_from_list(data["weights"])
    return AirlinesProblem(tuple(airports), tuple(airlines), tuple(flights), tuple(passengers), weights)


def problem_to_dict(problem: AirlinesProblem) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "airports": list(problem.airports),
        "airlines": list(problem.airlines),
        "flights": [flight_to_dict(f) for f in problem.flights],
        "passengers": [
            {"id": p.id, "price": p.price, "itinerary": [flight_to_dict(f) for f in p.flights]}
            for p in problem.passengers
        ],
    }
    if problem.weights is not None:
        data["weights"] = weights_to_list(problem.weights)
    return data


def load_weights(path: PathLike) -> WeightSystem:
    """Weight file: either a bare list of weight entries or ``{"weights": [...]}``."""
    data = load_json(path)
    if isinstance(data, Mapping):
        data = _field(data, "weights", str(path))
    return weights_from_list(data, str(path))


def load_problem(path: PathLike, weights_path: Optional[PathLike] = None) -> AirlinesProblem:
    """
    Read a problem file, optionally replacing its weights with a weight file.
    """
    problem = problem_from_dict(load_json(path))
    if weights_path is not None:
        problem = AirlinesProblem(
            problem.airports, problem.airlines, problem.flights, problem.passengers, load_weights(weights_path)
        )
    return problem


def factor_table_from_dict(data: Mapping) -> RegionalFactorTable:
    regions = _field(data, "regions", "factors file")
    if not isinstance(regions, Mapping):
        raise InputError("factors file: regions must be an object")
    factors = {}
    for k, entry in enumerate(_field(data, "factors", "factors file")):
        here = f"factors[{k}]"
        pair = (str(_field(entry, "from", here)), str(_field(entry, "to", here)))
        factors[pair] = _number(_field(entry, "f", here), here)
    return RegionalFactorTable({str(a): str(r) for a, r in regions.items()}, factors)


def load_factor_table(path: PathLike) -> RegionalFactorTable:
    return factor_table_from_dict(load_json(path))


def segments_from_dict(data: Mapping) -> Tuple[List[Segment], Optional[float]]:
    """
    Segments of one itinerary and the ATBP when the file carries one.

    Format: ``{"segments": [{"from", "to", "airline", "tpm", "spf"?}], "atbp"?}``
    """
    segments = []
    for k, entry in enumerate(_field(data, "segments", "segments file")):
        here = f"segments[{k}]"
        published = entry.get("spf") if isinstance(entry, Mapping) else None
        segments.append(Segment(
            _airport(_field(entry, "from", here), here),
            _airport(_field(entry, "to", here), here),
            _airline(_field(entry, "airline", here), here),
            _number(_field(entry, "tpm", here), here),
            None if published is None else int(_number(published, here)),
        ))
    atbp = data.get("atbp")
    return segments, None if atbp is None else _number(atbp, "atbp")


def load_segments(path: PathLike) -> Tuple[List[Segment], Optional[float]]:
    return segments_from_dict(load_json(path))


def allocation_to_dict(allocation: Allocation) -> Dict[str, float]:
    return {str(airline): amount for airline, amount in allocation.items}


def settlement_to_dict(settlement: Settlement) -> Dict[str, Any]:
    return {
        "allocation": allocation_to_dict(settlement.amounts),
        "trace": [
            {
                "from": r.segment.origin,
                "to": r.segment.destination,
                "airline": r.segment.airline,
                "tpm": r.segment.tpm,
                "worldwide_weight": r.worldwide_weight,
                "adjusted_tpm": r.adjusted_tpm,
                "regional_factor": r.regional_factor,
                "computed_spf": r.computed_spf,
                "spf": r.spf,
                "pinned": r.pinned,
            }
            for r in settlement.records
        ],
    }


def encode_value(value: Any) -> Any:
    """Convert flights, edges, flight-keyed mappings and tuples to JSON-ready values."""
    if isinstance(value, FlightKey):
        return flight_to_dict(value)
    if isinstance(value, Edge):
        return {"from": value.origin, "to": value.destination}
    if isinstance(value, Mapping):
        if value and all(isinstance(k, FlightKey) for k in value):
            return [{**flight_to_dict(k), "to_airline": encode_value(v)} for k, v in sorted(value.items())]
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode_value(v) for v in items]
    return value


def witness_to_dict(witness) -> Dict[str, Any]:
    """Self-contained witness: problem file, transformation data and the unequal values."""
    return {
        "axiom": witness.axiom,
        "rule": witness.rule_name,
        "problem": problem_to_dict(witness.problem),
        "transformation": encode_value(dict(witness.transformation)),
        "airline": witness.airline,
        "lhs": witness.lhs,
        "rhs": witness.rhs,
        "difference": witness.difference,
    }


def report_to_dict(report) -> Dict[str, Any]:
    return {
        "rule": report.rule,
        "axiom": report.axiom.value,
        "trials": report.trials,
        "passes": report.pass_count,
        "failures": report.fail_count,
        "inapplicable": report.inapplicable_count,
        "witness": None if report.first_witness is None else witness_to_dict(report.first_witness),
    }


def _sort_key(key: str) -> Tuple[int, Any]:
    return (0, int(key), "") if key.lstrip("-").isdigit() else (1, 0, key)


def _prepare(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return "@@null@@"
        text = f"{value:.{DECIMALS}f}"
        if text == f"-{0:.{DECIMALS}f}":
            text = text[1:]
        return f"@@{text}@@"
    if isinstance(value, int):
        return value
    if isinstance(value, Mapping):
        items = {str(k): _prepare(v) for k, v in value.items()}
        return {k: items[k] for k in sorted(items, key=_sort_key)}
    if isinstance(value, (list, tuple)):
        return [_prepare(v) for v in value]
    return _prepare(encode_value(value)) if isinstance(value, (FlightKey, Edge, set, frozenset)) else str(value)


def dumps_payload(payload: Any) -> str:
    """
    Render a payload as JSON with sorted keys and six fixed decimals.

    Numeric keys (airline ids) sort numerically and come before text keys.
    """
    text = json.dumps(_prepare(payload), indent=2, ensure_ascii=False)
    return _FLOAT_MARK.sub(r"\1", text)


def load_passenger_weights(path: PathLike) -> Dict[Any, WeightSystem]:
    """
    Per-passenger weight systems for R4.

    Format: ``{"passenger_weights": [{"id": k, "weights": [...]}, ...]}``
    """
    data = load_json(path)
    systems = {}
    for k, entry in enumerate(_field(data, "passenger_weights", str(path))):
        here = f"passenger_weights[{k}]"
        systems[_field(entry, "id", here)] = weights_from_list(_field(entry, "weights", here), here)
    return systems


def validation_to_dict(report) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "violations": [{"invariant": v.invariant, "element": v.element} for v in report.violations],
    }


def analysis_to_dict(analysis) -> Dict[str, Any]:
    witness = analysis.convexity.witness
    return {
        "shapley": allocation_to_dict(analysis.shapley),
        "r3": allocation_to_dict(analysis.r3),
        "equals_r3": analysis.equals_r3,
        "convex": analysis.convexity.convex,
        "convexity_witness": None if witness is None else {
            "airline": witness[0], "S": sorted(witness[1]), "T": sorted(witness[2]),
        },
        "shapley_in_core": analysis.shapley_in_core,
        "monotone": analysis.monotone,
        "superadditive": analysis.superadditive,
        "weighted_in_core": analysis.weighted_in_core,
    }
