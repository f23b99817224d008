# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Oracle-vs-DP comparison over seeded random instances."""

import logging
from dataclasses import dataclass, field

from moran_dim.dims.cutsets import DEFAULT_DP_NODES, s_delta_theta_general
from moran_dim.dims.roots import DEFAULT_BRACKET, RootBracket
from moran_dim.oracle.enumeration import (
    EnumerationBudget,
    cut_set_roots,
    enumerate_admissible_cut_sets,
)
from moran_dim.oracle.random_specs import RandomInstance, generate_instances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceOutcome:
    """DP and oracle answers for one instance."""

    instance: RandomInstance
    dp: float
    oracle: float
    enumerated: int
    match_tol: float

    @property
    def difference(self) -> float:
        return abs(self.dp - self.oracle)

    @property
    def counts_match(self) -> bool:
        return self.enumerated == self.instance.cut_sets

    @property
    def matched(self) -> bool:
        return self.difference <= self.match_tol and self.counts_match


@dataclass
class VerificationSummary:
    seed: int
    match_tol: float
    outcomes: list[InstanceOutcome] = field(default_factory=list)

    @property
    def matched(self) -> int:
        return sum(o.matched for o in self.outcomes)

    @property
    def counts_matched(self) -> int:
        return sum(o.counts_match for o in self.outcomes)

    @property
    def redraws(self) -> int:
        return sum(o.instance.redraws for o in self.outcomes)

    @property
    def max_difference(self) -> float:
        return max((o.difference for o in self.outcomes), default=0.0)

    @property
    def ok(self) -> bool:
        return self.matched == len(self.outcomes)

    def describe(self) -> str:
        return f"{self.matched}/{len(self.outcomes)} matched <= {self.match_tol:g}"


def verify_instance(
    instance: RandomInstance,
    budget: EnumerationBudget,
    match_tol: float = 1e-9,
    bracket: RootBracket = DEFAULT_BRACKET,
    dp_nodes: int = DEFAULT_DP_NODES,
) -> InstanceOutcome:
    cut_sets = enumerate_admissible_cut_sets(instance.spec, instance.band, budget)
    oracle = float(cut_set_roots(instance.spec, cut_sets, bracket).min())
    dp = s_delta_theta_general(instance.spec, instance.band, bracket, dp_nodes)
    outcome = InstanceOutcome(instance, dp, oracle, len(cut_sets), match_tol)
    if not outcome.matched:
        logger.warning(
            "Instance %d (seed %d) mismatch: dp %.15g, oracle %.15g, %d enumerated vs %d counted",
            instance.index,
            instance.seed,
            dp,
            oracle,
            len(cut_sets),
            instance.cut_sets,
        )
    return outcome


def verify_random_instances(
    seed: int,
    count: int,
    max_depth: int = 6,
    budget: EnumerationBudget | None = None,
    match_tol: float = 1e-9,
    bracket: RootBracket = DEFAULT_BRACKET,
    dp_nodes: int = DEFAULT_DP_NODES,
) -> VerificationSummary:
    """Compare s_delta_theta_general with the brute-force minimum on count random instances."""
    budget = budget or EnumerationBudget()
    summary = VerificationSummary(seed=seed, match_tol=match_tol)
    for instance in generate_instances(seed, count, max_depth, budget.max_cut_sets):
        summary.outcomes.append(verify_instance(instance, budget, match_tol, bracket, dp_nodes))
    logger.info("Verification with seed %d: %s", seed, summary.describe())
    return summary
