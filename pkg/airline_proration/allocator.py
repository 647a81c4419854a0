"""
Main allocation interface.

Provides the RevenueAllocator class for evaluating several allocation rules
on airlines problems and collecting the results in tables.
"""

from typing import Dict, List, Optional, Sequence, Union

import pandas as pd
from tqdm import tqdm

from .model import AirlinesProblem, WeightSystem
from .rules import Allocation, RuleKind, RuleSpec, allocate


class RevenueAllocator:
    """
    Evaluate allocation rules on airlines problems.

    Rules are grouped by how they divide revenue:
        - Flight-proportional: weighted (W), equal (E), r4
        - Pooled: r1, r5
        - Per-passenger equal splits: r2, r3

    Example:
        >>> allocator = RevenueAllocator(["weighted", "equal"])
        >>> allocations = allocator.allocate(problem)
        >>> table = allocator.allocate_frame(problem)
    """

    RULE_NAMES = [kind.value for kind in RuleKind]

    def __init__(
        self,
        rules: Optional[Sequence[Union[str, RuleSpec]]] = None,
        weights: Optional[WeightSystem] = None,
    ):
        """
        Initialize the allocator.

        Args:
            rules: Rule names or specs to evaluate (default: every rule that
                   needs no per-passenger weights).
            weights: Weight system overriding the one attached to problems
                     for the weight-based rules.
        """
        if rules is None:
            rules = [name for name in self.RULE_NAMES if not RuleKind(name).needs_passenger_weights]
        self.rules: List[RuleSpec] = [
            rule if isinstance(rule, RuleSpec) else RuleSpec.from_name(rule, weights)
            for rule in rules
        ]

    def allocate(self, problem: AirlinesProblem) -> Dict[str, Allocation]:
        """
        Evaluate every configured rule on a single problem.

        Args:
            problem: A valid airlines problem.

        Returns:
            Dictionary mapping rule names to allocations.
        """
        return {rule.name: allocate(problem, rule) for rule in self.rules}

    def allocate_frame(self, problem: AirlinesProblem) -> pd.DataFrame:
        """
        Evaluate every configured rule and tabulate the results.

        Returns:
            DataFrame with one row per airline and one column per rule.
        """
        columns = {name: alloc.to_series(name) for name, alloc in self.allocate(problem).items()}
        return pd.DataFrame(columns)

    def allocate_batch(
        self,
        problems: Sequence[AirlinesProblem],
        show_progress: bool = True,
    ) -> pd.DataFrame:
        """
        Evaluate every configured rule on many problems.

        Args:
            problems: Airlines problems.
            show_progress: Show progress bar (default: True).

        Returns:
            Long-format DataFrame with columns problem, rule, airline, amount.
        """
        iterator = tqdm(problems, desc="Allocating revenue") if show_progress else problems
        rows = []
        for number, problem in enumerate(iterator):
            for name, alloc in self.allocate(problem).items():
                rows.extend(
                    {"problem": number, "rule": name, "airline": airline, "amount": amount}
                    for airline, amount in alloc.items
                )
        return pd.DataFrame(rows, columns=["problem", "rule", "airline", "amount"])
