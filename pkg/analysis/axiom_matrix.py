"""
Axiom Satisfaction Matrix and Game Claims

Audits every allocation rule against every axiom on seeded problems,
compares the observed verdicts with the claimed ones, and checks the
pessimistic game claims (Shapley value = R3, convexity, core membership).

Usage:
    python axiom_matrix.py [trials] [seed]
"""

import os
import sys

import pandas as pd
from tqdm import tqdm

from airline_proration import RevenueAllocator, load_problem
from airline_proration.axioms import TrialConfig, audit_matrix, expected_frame, generate_problem, matrix_frame
from airline_proration.game import analyze


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    config = TrialConfig(seed=seed, trials=trials)

    data_path = os.path.join(os.path.dirname(__file__), '..', 'data', 'example2.json')
    example = load_problem(data_path)

    print(f"{'='*60}")
    print("WORKED EXAMPLE")
    print(f"{'='*60}")
    table = RevenueAllocator().allocate_frame(example)
    print(table.to_string(float_format="%.4f"))

    print(f"\n{'='*60}")
    print(f"AXIOM AUDIT ({trials} trials, seed {seed})")
    print(f"{'='*60}")
    reports, observed = audit_matrix(config=config)
    claimed = expected_frame()
    print("\nObserved:")
    print(observed.to_string())
    print("\nClaimed:")
    print(claimed.to_string())

    print("\nFailures per cell:")
    print(matrix_frame(reports, "fail_count").to_string())

    mismatches = [r for r in reports if r.expected is not None and r.observed != r.claimed]
    print(f"\nCells disagreeing with the claims: {len(mismatches)}")
    for r in mismatches:
        print(f"  {r.rule:10s} {r.axiom.value:22s} observed {r.summary}, claimed {r.claimed}")
    for r in reports:
        if r.expected is None and r.counterexample_found:
            print(f"  {r.rule:10s} {r.axiom.value:22s} not asserted, counterexample in {r.fail_count} trials")

    print(f"\n{'='*60}")
    print("PESSIMISTIC GAME")
    print(f"{'='*60}")
    analysis = analyze(example)
    print(f"Example: Shapley = R3: {analysis.equals_r3}, convex: {analysis.convexity.convex}, "
          f"Shapley in core: {analysis.shapley_in_core}, weighted rule in core: {analysis.weighted_in_core}")

    game_trials = min(trials, 500)
    rows = []
    for trial in tqdm(range(game_trials), desc="Game claims"):
        result = analyze(generate_problem(config, trial=trial))
        rows.append({
            "equals_r3": result.equals_r3,
            "convex": result.convexity.convex,
            "shapley_in_core": result.shapley_in_core,
            "weighted_in_core": bool(result.weighted_in_core),
        })
    summary = pd.DataFrame(rows).mean()
    print(f"\nShare of {game_trials} generated problems where the claim holds:")
    for claim, share in summary.items():
        print(f"  {claim:20s} {share*100:6.1f}%")


if __name__ == '__main__':
    main()
