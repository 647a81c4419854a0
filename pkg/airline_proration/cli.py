"""
Command-line front end.

Subcommands:
    - validate: check a problem file against the model assumptions
    - allocate: evaluate one or all allocation rules
    - audit: run seeded axiom audits
    - spf: IATA settlement of one itinerary
    - game: pessimistic game analysis

Payloads go to stdout; logs and error messages go to stderr. Exit codes:
0 on success, 1 on invalid input or configuration, 2 when an audit refutes
a claimed satisfaction.
"""

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd
import typer

try:  # newer typer vendors its own click; exceptions come from there
    from typer._click import exceptions as click_exceptions
except ImportError:  # pragma: no cover - older typer re-exports click's
    from click import exceptions as click_exceptions

from .allocator import RevenueAllocator
from .axioms import AxiomId, TrialConfig, audit
from .axioms.audit import matrix_frame
from .exceptions import ProrationError
from .game import analyze
from .iata import settle, tpm_prorate
from .model import AirlinesProblem, validate
from .rules import RuleKind, RuleSpec, allocate
from .utils.numeric import DEFAULT_TOLERANCE, RoundingMode
from .utils.serialization import (
    allocation_to_dict,
    analysis_to_dict,
    dumps_payload,
    load_factor_table,
    load_passenger_weights,
    load_problem,
    load_segments,
    report_to_dict,
    settlement_to_dict,
    validation_to_dict,
)

logger = logging.getLogger(__name__)

PROG_NAME = "airline-proration"
ALL = "all"
EXIT_OK, EXIT_ERROR, EXIT_DEFECT = 0, 1, 2

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Revenue allocation rules, IATA proration and axiom audits for multi-airline itineraries.",
)


class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


def _emit(payload, table: Optional[str], output: OutputFormat) -> None:
    if output is OutputFormat.TABLE and table is not None:
        typer.echo(table)
    else:
        typer.echo(dumps_payload(payload))


class _InvalidProblem(ProrationError):
    pass


def _load_valid_problem(problem_path: Path, weights_path: Optional[Path]) -> AirlinesProblem:
    problem = load_problem(problem_path, weights_path)
    report = validate(problem)
    if not report.ok:
        first = report.violations[0]
        raise _InvalidProblem(
            f"{problem_path}: {len(report.violations)} violation(s), first: {first.invariant} ({first.element})"
        )
    return problem


@app.callback()
def configure(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug messages to stderr."),
):
    """Configure logging for every subcommand."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


@app.command("validate")
def validate_command(
    problem: Path = typer.Option(..., "--problem", help="Problem file (JSON)."),
    weights: Optional[Path] = typer.Option(None, "--weights", help="Weight file replacing in-file weights."),
    output: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format."),
) -> int:
    """Report every violated model assumption of a problem file."""
    report = validate(load_problem(problem, weights))
    table = "ok" if report.ok else "\n".join(f"{v.invariant}: {v.element}" for v in report.violations)
    _emit(validation_to_dict(report), table, output)
    return EXIT_OK if report.ok else EXIT_ERROR


@app.command("allocate")
def allocate_command(
    problem: Path = typer.Option(..., "--problem", help="Problem file (JSON)."),
    rule: str = typer.Option("weighted", "--rule", help="weighted, equal, r1 ... r5, or all."),
    weights: Optional[Path] = typer.Option(None, "--weights", help="Weight file replacing in-file weights."),
    passenger_weights: Optional[Path] = typer.Option(
        None, "--passenger-weights", help="Per-passenger weight systems for r4."
    ),
    output: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format."),
) -> int:
    """Divide the passengers' payments among the airlines."""
    instance = _load_valid_problem(problem, weights)
    per_passenger = load_passenger_weights(passenger_weights) if passenger_weights else None

    if rule == ALL:
        names = [k.value for k in RuleKind if per_passenger is not None or not k.needs_passenger_weights]
        allocator = RevenueAllocator([RuleSpec.from_name(n, passenger_weights=per_passenger) for n in names])
        results = allocator.allocate(instance)
        payload = {"allocations": {name: allocation_to_dict(a) for name, a in results.items()}}
        _emit(payload, allocator.allocate_frame(instance).to_string(float_format="%.6f"), output)
        return EXIT_OK

    spec = RuleSpec.from_name(rule, passenger_weights=per_passenger)
    result = allocate(instance, spec)
    payload = {"rule": spec.name, "allocation": allocation_to_dict(result), "total": result.total()}
    _emit(payload, result.to_series(spec.name).to_frame().to_string(float_format="%.6f"), output)
    return EXIT_OK


@app.command("audit")
def audit_command(
    rule: str = typer.Option(ALL, "--rule", help="Rule to audit, or all."),
    axiom: str = typer.Option(ALL, "--axiom", help="Axiom to audit, or all."),
    run_all: bool = typer.Option(False, "--all", help="Audit the full rule x axiom matrix."),
    trials: int = typer.Option(1000, "--trials", help="Number of seeded trials."),
    seed: int = typer.Option(0, "--seed", help="Base seed."),
    tol: float = typer.Option(DEFAULT_TOLERANCE, "--tol", help="Relative tolerance."),
    output: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format."),
) -> int:
    """Check rules against the fairness axioms on generated problems."""
    config = TrialConfig(seed=seed, trials=trials, tolerance=tol)
    rules: List[str] = [k.value for k in RuleKind] if run_all or rule == ALL else [RuleSpec.from_name(rule).name]
    axioms = list(AxiomId) if run_all or axiom == ALL else [_axiom(axiom)]

    logger.debug(f"Auditing {len(rules)} rule(s) x {len(axioms)} axiom(s) with {config}")
    reports = [audit(r, a, config) for r in rules for a in axioms]
    if len(reports) == 1:
        payload = report_to_dict(reports[0])
    else:
        payload = {
            "seed": seed,
            "trials": trials,
            "reports": [report_to_dict(r) for r in reports],
            "table": matrix_frame(reports).to_dict(),
        }
    _emit(payload, matrix_frame(reports, "summary").to_string(), output)

    defects = [r for r in reports if r.defect]
    for report in defects:
        typer.echo(f"defect: {report.rule} fails {report.axiom.value} in {report.fail_count} trials", err=True)
    return EXIT_DEFECT if defects else EXIT_OK


def _axiom(name: str) -> AxiomId:
    try:
        return AxiomId(name)
    except ValueError:
        choices = ", ".join(a.value for a in AxiomId)
        raise typer.BadParameter(f"unknown axiom {name!r}; expected one of {choices}, all") from None


@app.command("spf")
def spf_command(
    segments: Path = typer.Option(..., "--segments", help="Segments file (JSON)."),
    factors: Path = typer.Option(..., "--factors", help="Regional factor table (JSON)."),
    atbp: Optional[float] = typer.Option(None, "--atbp", help="Amount to be prorated; overrides the file."),
    paper_table_mode: bool = typer.Option(
        False, "--paper-table-mode", help="Two-decimal weights and published SPFs where given."
    ),
    rounding: RoundingMode = typer.Option(RoundingMode.HALF_AWAY, "--rounding", help="SPF tie handling."),
    output: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format."),
) -> int:
    """Prorate one itinerary's ATBP by Standard Proration Factors."""
    legs, file_atbp = load_segments(segments)
    amount = atbp if atbp is not None else file_atbp
    if amount is None:
        raise typer.BadParameter("no ATBP: pass --atbp or set atbp in the segments file")
    settlement = settle(legs, amount, load_factor_table(factors), paper_table_mode, rounding)
    payload = settlement_to_dict(settlement)
    payload["atbp"] = amount
    payload["tpm_allocation"] = allocation_to_dict(tpm_prorate(legs, amount))

    table = pd.DataFrame(payload["trace"]).to_string(index=False, float_format="%.6f")
    _emit(payload, table, output)
    return EXIT_OK


@app.command("game")
def game_command(
    problem: Path = typer.Option(..., "--problem", help="Problem file (JSON)."),
    weights: Optional[Path] = typer.Option(None, "--weights", help="Weight file replacing in-file weights."),
    tol: float = typer.Option(DEFAULT_TOLERANCE, "--tol", help="Relative tolerance."),
    output: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format."),
) -> int:
    """Shapley value, convexity and core membership of the pessimistic game."""
    analysis = analyze(_load_valid_problem(problem, weights), tol)
    payload = analysis_to_dict(analysis)
    table = "\n".join(f"{key}: {value}" for key, value in payload.items() if not isinstance(value, dict))
    _emit(payload, table, output)
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return its exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:]).
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = app(args=args, prog_name=PROG_NAME, standalone_mode=False)
    except click_exceptions.Exit as exc:
        return exc.exit_code
    except click_exceptions.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click_exceptions.Abort:
        return EXIT_ERROR
    except ProrationError as exc:
        typer.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
