"""
Seeded axiom audits.

Runs a rule against an axiom on many generated problems, drawing the
transformation data (passenger subsets, reassignments, airline pairs) per
trial, and compares the outcome with the satisfactions and failures the
literature claims for the rule.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from tqdm import tqdm

from ..model import AirlinesProblem, empty_flights
from ..rules import RuleKind, RuleSpec
from .checks import (
    aggregate,
    as_rule,
    check_additivity,
    check_flights_equivalence,
    check_independence_empty_flights,
    check_independence_other_airlines,
    check_null_airline,
    check_pairwise_homogeneity,
    ratio_preservation_outcomes,
)
from .generators import (
    PASSENGER_WEIGHT_STREAM,
    TRANSFORM_STREAM,
    add_twin_passenger,
    cached_problem,
    sample_passenger_weights,
    sample_sigma,
    sample_subset,
    trial_rng,
)
from .outcome import AxiomId, CheckOutcome, Constraints, TrialConfig, Verdict, Witness, rule_name

logger = logging.getLogger(__name__)

A = AxiomId

# True: the rule satisfies the axiom; False: it fails it; None: not asserted.
EXPECTED: Dict[str, Dict[AxiomId, Optional[bool]]] = {
    "weighted": {
        A.ADDITIVITY: True, A.NULL_AIRLINE: True, A.IND_EMPTY_FLIGHTS: True, A.FLIGHTS_EQUIVALENCE: False,
        A.IND_OTHER_AIRLINES: True, A.RATIO_PRESERVATION: True, A.PAIRWISE_HOMOGENEITY: True,
    },
    "equal": {
        A.ADDITIVITY: True, A.NULL_AIRLINE: True, A.IND_EMPTY_FLIGHTS: True, A.FLIGHTS_EQUIVALENCE: True,
        A.IND_OTHER_AIRLINES: True, A.RATIO_PRESERVATION: True, A.PAIRWISE_HOMOGENEITY: False,
    },
    "r1": {
        A.ADDITIVITY: False, A.NULL_AIRLINE: True, A.IND_EMPTY_FLIGHTS: True, A.FLIGHTS_EQUIVALENCE: None,
        A.IND_OTHER_AIRLINES: True, A.RATIO_PRESERVATION: True, A.PAIRWISE_HOMOGENEITY: True,
    },
    # merging unused airlines changes |N \ N^j|, and equal splits ignore weights,
    # so independence of other airlines and pairwise homogeneity are left open
    "r2": {
        A.ADDITIVITY: True, A.NULL_AIRLINE: False, A.IND_EMPTY_FLIGHTS: False, A.FLIGHTS_EQUIVALENCE: None,
        A.IND_OTHER_AIRLINES: None, A.RATIO_PRESERVATION: True, A.PAIRWISE_HOMOGENEITY: None,
    },
    "r3": {
        A.ADDITIVITY: True, A.NULL_AIRLINE: True, A.IND_EMPTY_FLIGHTS: True, A.FLIGHTS_EQUIVALENCE: True,
        A.IND_OTHER_AIRLINES: False, A.RATIO_PRESERVATION: True, A.PAIRWISE_HOMOGENEITY: None,
    },
    "r4": {
        A.ADDITIVITY: True, A.NULL_AIRLINE: True, A.IND_EMPTY_FLIGHTS: True, A.FLIGHTS_EQUIVALENCE: None,
        A.IND_OTHER_AIRLINES: True, A.RATIO_PRESERVATION: False, A.PAIRWISE_HOMOGENEITY: None,
    },
    "r5": {
        A.ADDITIVITY: False, A.NULL_AIRLINE: None, A.IND_EMPTY_FLIGHTS: None, A.FLIGHTS_EQUIVALENCE: True,
        A.IND_OTHER_AIRLINES: True, A.RATIO_PRESERVATION: None, A.PAIRWISE_HOMOGENEITY: None,
    },
}

YES, NO, UNDECIDED = "Yes", "No", "-"


@dataclass(frozen=True)
class AuditReport:
    """
    Result of auditing one rule against one axiom.

    Attributes:
        rule: Rule name.
        axiom: Audited axiom.
        trials: Number of trials run.
        pass_count: Trials where the axiom held on every drawn transformation.
        fail_count: Trials with at least one violation.
        inapplicable_count: Trials where no check applied.
        first_witness: Witness of the first failing trial.
        expected: Claimed satisfaction (True), failure (False) or None.
    """

    rule: str
    axiom: AxiomId
    trials: int
    pass_count: int
    fail_count: int
    inapplicable_count: int
    first_witness: Optional[Witness] = None
    expected: Optional[bool] = None

    @property
    def defect(self) -> bool:
        """A claimed satisfaction was refuted."""
        return self.expected is True and self.fail_count > 0

    @property
    def counterexample_found(self) -> bool:
        return self.fail_count > 0

    @property
    def observed(self) -> str:
        if self.fail_count:
            return NO
        return YES if self.pass_count else UNDECIDED

    @property
    def claimed(self) -> str:
        return {True: YES, False: NO, None: UNDECIDED}[self.expected]

    @property
    def summary(self) -> str:
        return f"{self.observed} ({self.fail_count}/{self.trials})"


def expected_claim(rule: str, axiom: AxiomId) -> Optional[bool]:
    return EXPECTED.get(rule, {}).get(AxiomId(axiom))


def _trial_rule(rule, problem: AirlinesProblem, config: TrialConfig, trial: int):
    """Attach random per-passenger weights to an R4 spec that has none."""
    if isinstance(rule, RuleSpec) and rule.kind is RuleKind.R4 and rule.passenger_weights is None:
        rng = trial_rng(config, trial, PASSENGER_WEIGHT_STREAM)
        return RuleSpec(rule.kind, rule.weights, sample_passenger_weights(problem, rng))
    return rule


def run_trial(
    rule,
    axiom: AxiomId,
    config: TrialConfig,
    trial: int,
    constraints: Optional[Constraints] = None,
) -> CheckOutcome:
    """
    One audit trial: generate the problem, draw the transformation data, check.

    A trial fails when any drawn check fails and passes when at least one
    applied.
    """
    axiom = AxiomId(axiom)
    rule = as_rule(rule)
    tol = config.tolerance
    problem = cached_problem(config, constraints, trial)
    rng = trial_rng(config, trial, TRANSFORM_STREAM)
    if axiom is AxiomId.RATIO_PRESERVATION:
        problem = add_twin_passenger(problem, rng)
    rule = _trial_rule(rule, problem, config, trial)

    if axiom is AxiomId.ADDITIVITY:
        return check_additivity(rule, problem, sample_subset(problem, rng), tol)
    if axiom is AxiomId.NULL_AIRLINE:
        return check_null_airline(rule, problem, tol)
    if axiom is AxiomId.IND_EMPTY_FLIGHTS:
        return aggregate(check_independence_empty_flights(rule, problem, f, tol) for f in empty_flights(problem))
    if axiom is AxiomId.FLIGHTS_EQUIVALENCE:
        return check_flights_equivalence(rule, problem, tol)
    if axiom is AxiomId.IND_OTHER_AIRLINES:
        sigmas = [(i, sample_sigma(problem, i, rng)) for i in problem.airlines]
        return aggregate(check_independence_other_airlines(rule, problem, s, i, tol) for i, s in sigmas)
    if axiom is AxiomId.RATIO_PRESERVATION:
        return aggregate(ratio_preservation_outcomes(rule, problem, tol))
    pairs = [(a, b) for a in problem.airlines for b in problem.airlines if a < b]
    return aggregate(check_pairwise_homogeneity(rule, problem, a, b, tol) for a, b in pairs)


def audit(
    rule: Union[str, RuleSpec],
    axiom: Union[str, AxiomId],
    config: Optional[TrialConfig] = None,
    constraints: Optional[Constraints] = None,
    show_progress: bool = False,
) -> AuditReport:
    """
    Audit a rule against an axiom over ``config.trials`` seeded problems.

    Args:
        rule: Rule name or spec.
        axiom: Axiom to check.
        config: Seed, trial count, size bounds and tolerance.
        constraints: Generator domain restrictions.
        show_progress: Show progress bar (default: False).

    Returns:
        AuditReport with counts, the first witness and the claimed verdict.
        The report depends only on the arguments.
    """
    config = config or TrialConfig()
    axiom = AxiomId(axiom)
    rule = as_rule(rule)
    name = rule_name(rule)
    counts = {verdict: 0 for verdict in Verdict}
    first_witness = None

    trials = range(config.trials)
    if show_progress:
        trials = tqdm(trials, desc=f"{name} / {axiom.value}", leave=False)
    for trial in trials:
        outcome = run_trial(rule, axiom, config, trial, constraints)
        counts[outcome.verdict] += 1
        if outcome.verdict is Verdict.FAIL and first_witness is None:
            first_witness = outcome.witness

    report = AuditReport(
        rule=name,
        axiom=axiom,
        trials=config.trials,
        pass_count=counts[Verdict.PASS],
        fail_count=counts[Verdict.FAIL],
        inapplicable_count=counts[Verdict.INAPPLICABLE],
        first_witness=first_witness,
        expected=expected_claim(name, axiom),
    )
    logger.info(
        f"Audit {name} / {axiom.value}: {report.pass_count} pass, {report.fail_count} fail, "
        f"{report.inapplicable_count} inapplicable"
    )
    if report.defect:
        logger.warning(f"{name} is claimed to satisfy {axiom.value} but failed {report.fail_count} trials")
    return report


def audit_matrix(
    rules: Optional[Sequence[Union[str, RuleSpec]]] = None,
    axioms: Optional[Sequence[Union[str, AxiomId]]] = None,
    config: Optional[TrialConfig] = None,
    constraints: Optional[Constraints] = None,
    show_progress: bool = True,
) -> Tuple[List[AuditReport], pd.DataFrame]:
    """
    Audit every rule against every axiom.

    Returns:
        The reports in rule-major order and a table with one row per axiom
        and one column per rule holding the observed Yes/No verdicts.
    """
    rules = [as_rule(r) for r in (rules or [kind.value for kind in RuleKind])]
    axioms = [AxiomId(a) for a in (axioms or list(AxiomId))]
    cells = [(rule, axiom) for rule in rules for axiom in axioms]
    iterator = tqdm(cells, desc="Auditing axioms") if show_progress else cells
    reports = [audit(rule, axiom, config, constraints) for rule, axiom in iterator]
    return reports, matrix_frame(reports)


def matrix_frame(reports: Sequence[AuditReport], value: str = "observed") -> pd.DataFrame:
    """
    Pivot reports into an axiom x rule table.

    Args:
        reports: Audit reports.
        value: Report attribute shown in each cell, e.g. ``observed``,
               ``claimed`` or ``fail_count``.
    """
    rows = [{"axiom": r.axiom.value, "rule": r.rule, value: getattr(r, value)} for r in reports]
    frame = pd.DataFrame(rows, columns=["axiom", "rule", value])
    table = frame.pivot(index="axiom", columns="rule", values=value)
    axis_rules = list(dict.fromkeys(r.rule for r in reports))
    axis_axioms = list(dict.fromkeys(r.axiom.value for r in reports))
    return table.reindex(index=axis_axioms, columns=axis_rules)


def expected_frame() -> pd.DataFrame:
    """The claimed satisfactions as an axiom x rule table of Yes/No/-."""
    symbol = {True: YES, False: NO, None: UNDECIDED}
    data = {rule: [symbol[claims[a]] for a in AxiomId] for rule, claims in EXPECTED.items()}
    return pd.DataFrame(data, index=pd.Index([a.value for a in AxiomId], name="axiom"))
