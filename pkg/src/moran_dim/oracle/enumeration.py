# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Exhaustive cut-set enumeration on small truncated trees.

Every node u other than the root either joins the cut set (SELECT, allowed
when |J_u| <= δ) or is replaced by its children (RECURSE, allowed when
|J_u| > δ^(1/θ)). Enumerating every combination lists each admissible cut set
exactly once.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from moran_dim.core.errors import DomainError, ResourceError
from moran_dim.core.schema import BudgetsConfig
from moran_dim.core.spec import MoranSpec
from moran_dim.core.words import EMPTY_WORD, CutSet, Word
from moran_dim.dims.classic import s_k_values
from moran_dim.dims.cutsets import MERGE_DECIMALS, AdmissibleBand
from moran_dim.dims.roots import DEFAULT_BRACKET, RootBracket, bisect_many

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationBudget:
    """Caps on tree nodes visited and cut sets produced."""

    max_nodes: int = 200_000
    max_cut_sets: int = 2_000

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_cut_sets < 1:
            raise DomainError(f"Enumeration budgets must be positive, got {self.max_nodes}, {self.max_cut_sets}")

    @classmethod
    def from_config(cls, budgets: BudgetsConfig) -> "EnumerationBudget":
        return cls(max_nodes=budgets.oracle_nodes, max_cut_sets=budgets.oracle_cut_sets)


class _Enumerator:
    def __init__(self, spec: MoranSpec, band: AdmissibleBand, budget: EnumerationBudget):
        self.spec = spec
        self.band = band
        self.budget = budget
        self.nodes = 0

    def _visit(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise ResourceError(f"Cut-set enumeration visited more than {self.budget.max_nodes} tree nodes")

    def _check_size(self, size: int) -> None:
        if size > self.budget.max_cut_sets:
            raise ResourceError(f"More than {self.budget.max_cut_sets} admissible cut sets for {self.band.describe()}")

    def options(self, word: Word) -> list[frozenset[Word]]:
        """Every admissible way to cover the subtree below word."""
        self._visit()
        found: list[frozenset[Word]] = []
        if word.level > 0 and self.band.covers(word.log_diam):
            found.append(frozenset([word]))
        if self.band.above_fine(word.log_diam):
            vector = self.spec.level(word.level + 1)
            below = [
                self.options(Word(word.path + (j,), word.log_diam + log_c)) for j, log_c in vector.children()
            ]
            combos = 1
            for branch in below:
                combos *= len(branch)
            self._check_size(len(found) + combos)
            found.extend(frozenset().union(*parts) for parts in itertools.product(*below))
        return found


def enumerate_admissible_cut_sets(
    spec: MoranSpec, band: AdmissibleBand, budget: EnumerationBudget | None = None
) -> list[CutSet]:
    """All admissible cut sets of the band, each exactly once.

    Raises:
        ResourceError: If a budget is exceeded
    """
    enumerator = _Enumerator(spec, band, budget or EnumerationBudget())
    cut_sets = [CutSet.of(words) for words in enumerator.options(EMPTY_WORD)]
    logger.debug("Enumerated %d cut sets over %d nodes (%s)", len(cut_sets), enumerator.nodes, band.describe())
    return cut_sets


def count_admissible_cut_sets(spec: MoranSpec, band: AdmissibleBand) -> int:
    """Closed-form count: count(u) = [SELECT] + [RECURSE] * product of children's counts."""
    memo: dict[tuple[int, float], int] = {}

    def count(level: int, log_diam: float) -> int:
        key = (level, round(log_diam, MERGE_DECIMALS))
        if key in memo:
            return memo[key]
        total = 1 if level > 0 and band.covers(log_diam) else 0
        if band.above_fine(log_diam):
            vector = spec.level(level + 1)
            product = 1
            for log_c, runs in zip(vector.log_ratios, vector.counts, strict=True):
                product *= count(level + 1, log_diam + log_c) ** runs
            total += product
        memo[key] = total
        return total

    return count(0, 0.0)


def cut_set_roots(
    spec: MoranSpec, cut_sets: list[CutSet], bracket: RootBracket = DEFAULT_BRACKET
) -> np.ndarray:
    """Root of sum |J_u|^s = 1 for every cut set, solved together."""
    if not cut_sets:
        raise DomainError("No cut sets to solve")
    width = max(len(c) for c in cut_sets)
    logs = np.zeros((len(cut_sets), width))
    mask = np.zeros((len(cut_sets), width), dtype=bool)
    for i, cut_set in enumerate(cut_sets):
        diams = cut_set.log_diams
        logs[i, : len(diams)] = diams
        mask[i, : len(diams)] = True

    def log_sums(s: np.ndarray) -> np.ndarray:
        return logsumexp(np.where(mask, s[:, None] * logs, -np.inf), axis=1)

    return bisect_many(log_sums, len(cut_sets), bracket, spec.ambient_dim)


def brute_force_s_delta_theta(
    spec: MoranSpec,
    band: AdmissibleBand,
    budget: EnumerationBudget | None = None,
    bracket: RootBracket = DEFAULT_BRACKET,
) -> float:
    """min over admissible cut sets of the root of sum |J_u|^s = 1."""
    roots = cut_set_roots(spec, enumerate_admissible_cut_sets(spec, band, budget), bracket)
    return float(roots.min())


def lemma_sum_check(
    spec: MoranSpec, cut_set: CutSet, beta: float, bracket: RootBracket = DEFAULT_BRACKET
) -> bool:
    """True iff sum over the cut set of |J_u|^β exceeds 1.

    This holds for every cut set when β < min s_k over its level range, so a
    False return is a defect.

    Raises:
        DomainError: If β is negative or not below min s_k over L_M <= k <= K_M
    """
    if beta < 0:
        raise DomainError(f"β must be >= 0, got {beta}")
    if not len(cut_set):
        raise DomainError("Empty cut set")
    floor = float(s_k_values(spec, cut_set.min_level, cut_set.max_level, bracket).min())
    if not beta < floor:
        raise DomainError(
            f"β = {beta} must be below min s_k = {floor:.12g} over levels {cut_set.min_level}..{cut_set.max_level}"
        )
    return float(logsumexp(beta * np.asarray(cut_set.log_diams))) > 0.0
