# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Prefix-sum level tables for homogeneous specs.

For a homogeneous spec, S_k = sum log n_i and P_k = sum log c_i (i <= k) give
s_k = -S_k / P_k and log M_k = P_k. Tables are filled chunk by chunk from
level 1 and keep only the requested level range.
"""

import logging
from dataclasses import dataclass

import numpy as np

from moran_dim.core.errors import DomainError, ResourceError, UnsupportedCombination
from moran_dim.core.ratios import check_level
from moran_dim.core.spec import MoranSpec
from moran_dim.rules.base import CHUNK, iter_level_arrays

logger = logging.getLogger(__name__)

# Default cap on the number of levels one table may hold
DEFAULT_MAX_LEVELS = 30_000_000

# Relative slack on P_l <= target; exact ties count as reached
SCALE_RTOL = 1e-12


@dataclass(frozen=True)
class LevelTable:
    """S_k, P_k and s_k for levels start..stop of a homogeneous spec."""

    start: int
    stop: int
    log_n_sum: np.ndarray
    log_c_sum: np.ndarray
    s: np.ndarray

    def __len__(self) -> int:
        return self.stop - self.start + 1

    def index(self, k: int) -> int:
        if not self.start <= k <= self.stop:
            raise DomainError(f"Level {k} is outside the table range [{self.start}, {self.stop}]")
        return k - self.start

    def s_at(self, k: int) -> float:
        return float(self.s[self.index(k)])

    def log_m_at(self, k: int) -> float:
        return float(self.log_c_sum[self.index(k)])

    def slice(self, lo: int, hi: int) -> slice:
        """Array slice covering levels lo..hi inclusive."""
        return slice(self.index(lo), self.index(hi) + 1)


def require_homogeneous(spec: MoranSpec, operation: str) -> None:
    if not spec.homogeneous:
        raise UnsupportedCombination(f"{operation} needs a homogeneous spec, got {spec.describe()}")


def build_level_table(
    spec: MoranSpec,
    start: int,
    stop: int,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> LevelTable:
    """Compute S_k, P_k and s_k for start <= k <= stop.

    Raises:
        UnsupportedCombination: If the spec is not homogeneous
        ResourceError: If the range holds more than max_levels levels
        DomainError: If the range is empty or the rule stops early
    """
    require_homogeneous(spec, "build_level_table")
    check_level(start)
    check_level(stop)
    if stop < start:
        raise DomainError(f"Empty level range [{start}, {stop}]")
    if stop - start + 1 > max_levels:
        raise ResourceError(
            f"Level table [{start}, {stop}] holds {stop - start + 1} levels, over the budget of {max_levels}"
        )
    spec.check_range(stop)

    size = stop - start + 1
    log_n_sum = np.empty(size)
    log_c_sum = np.empty(size)
    carry_n = 0.0
    carry_c = 0.0
    for arrays in iter_level_arrays(spec.rule, 1, stop):
        cum_n = carry_n + np.cumsum(arrays.log_n)
        cum_c = carry_c + np.cumsum(arrays.log_c)
        carry_n = float(cum_n[-1])
        carry_c = float(cum_c[-1])
        lo = max(arrays.k_lo, start)
        if lo > arrays.k_hi:
            continue
        src = slice(lo - arrays.k_lo, arrays.k_hi - arrays.k_lo + 1)
        dst = slice(lo - start, arrays.k_hi - start + 1)
        log_n_sum[dst] = cum_n[src]
        log_c_sum[dst] = cum_c[src]

    s = -log_n_sum / log_c_sum
    logger.debug("Level table [%d, %d] for %s", start, stop, spec.describe())
    return LevelTable(start=start, stop=stop, log_n_sum=log_n_sum, log_c_sum=log_c_sum, s=s)


def threshold_levels(log_c_sum: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Index of the first P at or below each target (len(P) when none is).

    P must be strictly decreasing. A P within SCALE_RTOL of its target counts
    as reaching it.
    """
    targets = np.asarray(targets, dtype=float)
    return np.searchsorted(-log_c_sum, -targets * (1.0 - SCALE_RTOL), side="left")


def first_level_at_or_below(
    spec: MoranSpec,
    log_target: float,
    start: int = 1,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> int:
    """Smallest level l >= start with P_l <= log_target.

    Raises:
        ResourceError: If no such level exists within max_levels levels
    """
    require_homogeneous(spec, "first_level_at_or_below")
    check_level(start)
    limit = spec.rule.max_level
    carry = 0.0
    k_lo = 1
    width = 1024
    while True:
        if k_lo > max_levels:
            raise ResourceError(f"No level reaches log scale {log_target:.6g} within {max_levels} levels")
        k_hi = k_lo + width - 1
        width = min(2 * width, CHUNK)
        if limit is not None:
            if k_lo > limit:
                raise DomainError(
                    f"{spec.rule.describe()} stops at level {limit} before reaching scale {log_target:.6g}"
                )
            k_hi = min(k_hi, limit)
        arrays = spec.rule.level_arrays(k_lo, k_hi)
        cum = carry + np.cumsum(arrays.log_c)
        k = np.arange(k_lo, k_hi + 1)
        hit = np.nonzero((k >= start) & (-cum >= -log_target * (1.0 - SCALE_RTOL)))[0]
        if hit.size:
            return int(k[hit[0]])
        carry = float(cum[-1])
        k_lo = k_hi + 1


def level_at_scale(spec: MoranSpec, log_delta: float, max_levels: int = DEFAULT_MAX_LEVELS) -> int:
    """k(δ): the unique k with c_1...c_k <= δ < c_1...c_{k-1}."""
    return first_level_at_or_below(spec, log_delta, start=1, max_levels=max_levels)
