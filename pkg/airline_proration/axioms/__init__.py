"""
Axiom checks, problem generators and seeded audits.

Modules:
    - outcome: AxiomId, Verdict, Witness, CheckOutcome, TrialConfig, Constraints
    - generators: generate_problem and transformation samplers
    - checks: one check per axiom, the empty-flight implication, witness replay
    - audit: audit, audit_matrix and the claimed satisfaction table
"""

from .audit import EXPECTED, AuditReport, audit, audit_matrix, expected_frame, matrix_frame, run_trial
from .checks import (
    check_additivity,
    check_empty_flight_implication,
    check_flights_equivalence,
    check_independence_empty_flights,
    check_independence_other_airlines,
    check_null_airline,
    check_pairwise_homogeneity,
    check_ratio_preservation,
    check_rule_validity,
    evaluate,
    replay_witness,
)
from .generators import (
    add_twin_passenger,
    generate_problem,
    sample_passenger_weights,
    sample_sigma,
    sample_subset,
    trial_rng,
)
from .outcome import AxiomId, CheckOutcome, Constraints, TrialConfig, Verdict, Witness

__all__ = [
    "AxiomId", "Verdict", "Witness", "CheckOutcome", "TrialConfig", "Constraints",
    "generate_problem", "sample_subset", "sample_sigma", "sample_passenger_weights",
    "add_twin_passenger", "trial_rng",
    "check_rule_validity", "check_additivity", "check_null_airline",
    "check_independence_empty_flights", "check_flights_equivalence",
    "check_independence_other_airlines", "check_ratio_preservation",
    "check_pairwise_homogeneity", "check_empty_flight_implication",
    "replay_witness", "evaluate",
    "audit", "audit_matrix", "run_trial", "AuditReport", "EXPECTED",
    "expected_frame", "matrix_frame",
]
