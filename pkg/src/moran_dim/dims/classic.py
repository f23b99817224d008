# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Pre-dimension numbers and the classical dimension estimates.

log Δ_{k,k'}(s) = sum over k < i <= k' of log sum_j c_{i,j}^s, and s_{k,k'} is
its unique root. s_k = s_{0,k}. Over a window of levels:

- s_* (Hausdorff) is estimated by min s_k
- s^* (upper box and packing) by max s_k
- s^** (Assouad) by the profile m -> max s_{k,k+m}
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from moran_dim.core.errors import DomainError
from moran_dim.core.levels import DEFAULT_MAX_LEVELS, build_level_table, require_homogeneous
from moran_dim.core.ratios import check_level
from moran_dim.core.spec import MoranSpec
from moran_dim.dims.roots import DEFAULT_BRACKET, RootBracket, bisect_many, solve_decreasing
from moran_dim.rules.base import iter_level_arrays

logger = logging.getLogger(__name__)

# Cap on (queries x levels x ratio runs) evaluated per vectorized step
_BATCH_CELLS = 1 << 22

# Relative slack on the consecutive-gap bound
GAP_RTOL = 1e-9


def _check_pair(spec: MoranSpec, k: int, k2: int) -> None:
    if k < 0 or k >= k2:
        raise DomainError(f"Need 0 <= k < k', got k={k}, k'={k2}")
    check_level(k2)
    spec.check_range(k2)


def _homogeneous_sums(spec: MoranSpec, k: int, k2: int) -> tuple[float, float]:
    """(sum log n_i, sum log c_i) over k < i <= k'."""
    log_n = 0.0
    log_c = 0.0
    for arrays in iter_level_arrays(spec.rule, k + 1, k2):
        log_n += float(np.sum(arrays.log_n))
        log_c += float(np.sum(arrays.log_c))
    return log_n, log_c


class _RunMatrix:
    """Levels 1..depth of a general spec as padded (level, run) matrices."""

    def __init__(self, spec: MoranSpec, depth: int):
        vectors = [spec.level(k) for k in range(1, depth + 1)]
        runs = max(len(v.counts) for v in vectors)
        self.log_c = np.zeros((depth, runs))
        self.log_count = np.full((depth, runs), -np.inf)
        for i, v in enumerate(vectors):
            self.log_c[i, : len(v.log_ratios)] = v.log_ratios
            self.log_count[i, : len(v.counts)] = v.log_counts
        self.depth = depth

    def level_terms(self, s: np.ndarray) -> np.ndarray:
        """log sum_j c_{i,j}^s for each query exponent (rows) and level (columns)."""
        return logsumexp(s[:, None, None] * self.log_c[None] + self.log_count[None], axis=2)

    def pair_sums(self, s: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """log Δ_{lo,hi}(s) per query."""
        level = np.arange(1, self.depth + 1)
        inside = (level[None, :] > lo[:, None]) & (level[None, :] <= hi[:, None])
        return np.where(inside, self.level_terms(s), 0.0).sum(axis=1)


def log_delta(spec: MoranSpec, k: int, k2: int, s: float) -> float:
    """log Δ_{k,k'}(s), evaluated in log space.

    Raises:
        DomainError: If not 0 <= k < k' or s < 0
    """
    _check_pair(spec, k, k2)
    if s < 0:
        raise DomainError(f"Exponent must be >= 0, got {s}")
    if spec.homogeneous:
        log_n, log_c = _homogeneous_sums(spec, k, k2)
        return log_n + s * log_c
    return float(sum(spec.level(i).log_power_sum(s) for i in range(k + 1, k2 + 1)))


def solve_s_kk(spec: MoranSpec, k: int, k2: int, bracket: RootBracket = DEFAULT_BRACKET) -> float:
    """The unique root s_{k,k'} of log Δ_{k,k'}(s) = 0 in [0, d].

    Raises:
        DomainError: If not 0 <= k < k'
        NumericError: If [0, d] does not straddle the root
    """
    _check_pair(spec, k, k2)
    if spec.homogeneous:
        log_n, log_c = _homogeneous_sums(spec, k, k2)
        return solve_decreasing(lambda s: log_n + s * log_c, bracket, spec.ambient_dim)
    vectors = [spec.level(i) for i in range(k + 1, k2 + 1)]
    return solve_decreasing(lambda s: sum(v.log_power_sum(s) for v in vectors), bracket, spec.ambient_dim)


def pair_roots(
    spec: MoranSpec,
    pairs: Sequence[tuple[int, int]],
    bracket: RootBracket = DEFAULT_BRACKET,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> np.ndarray:
    """s_{k,k'} for many pairs at once.

    Homogeneous specs use closed-form sums; general specs bisect all pairs
    together over padded level matrices.
    """
    if not pairs:
        return np.empty(0)
    lo = np.array([p[0] for p in pairs], dtype=np.int64)
    hi = np.array([p[1] for p in pairs], dtype=np.int64)
    for k, k2 in zip(lo[[0, -1]], hi[[0, -1]], strict=True):
        _check_pair(spec, int(k), int(k2))
    if np.any(lo < 0) or np.any(lo >= hi):
        raise DomainError("Every pair needs 0 <= k < k'")
    depth = int(hi.max())
    spec.check_range(depth)
    if depth > max_levels:
        raise DomainError(f"Pairs reach level {depth}, over the level budget {max_levels}")

    if spec.homogeneous:
        table = build_level_table(spec, 1, depth, max_levels)
        n_sum = np.concatenate([[0.0], table.log_n_sum])
        c_sum = np.concatenate([[0.0], table.log_c_sum])
        return -(n_sum[hi] - n_sum[lo]) / (c_sum[hi] - c_sum[lo])

    matrix = _RunMatrix(spec, depth)
    batch = max(1, _BATCH_CELLS // (depth * matrix.log_c.shape[1]))
    roots = np.empty(len(pairs))
    for start in range(0, len(pairs), batch):
        part = slice(start, start + batch)
        a, b = lo[part], hi[part]
        roots[part] = bisect_many(
            lambda s, a=a, b=b: matrix.pair_sums(s, a, b), len(a), bracket, spec.ambient_dim
        )
    return roots


@dataclass
class RunningSums:
    """Streaming prefix sums S_k = sum log n_i and P_k = sum log c_i."""

    k: int = 0
    log_n_sum: float = 0.0
    log_c_sum: float = 0.0

    @classmethod
    def at(cls, spec: MoranSpec, k: int) -> "RunningSums":
        log_n, log_c = _homogeneous_sums(spec, 0, k)
        return cls(k=k, log_n_sum=log_n, log_c_sum=log_c)

    def advance(self, log_n: float, log_c: float) -> None:
        self.k += 1
        self.log_n_sum += log_n
        self.log_c_sum += log_c

    @property
    def s(self) -> float:
        return -self.log_n_sum / self.log_c_sum


def s_k_homogeneous(spec: MoranSpec, k: int, state: RunningSums | None = None) -> float:
    """s_k = -S_k / P_k for a homogeneous spec.

    With a state at level k - 1 the state is advanced in place, O(1) per level.

    Raises:
        UnsupportedCombination: If the spec is not homogeneous
        DomainError: If the state is not at level k - 1 or k
    """
    require_homogeneous(spec, "s_k_homogeneous")
    check_level(k)
    if state is None:
        return RunningSums.at(spec, k).s
    if state.k == k - 1:
        spec.check_range(k)
        arrays = spec.rule.level_arrays(k, k)
        state.advance(float(arrays.log_n[0]), float(arrays.log_c[0]))
    elif state.k != k:
        raise DomainError(f"Running sums are at level {state.k}, cannot produce s_{k}")
    return state.s


def s_k_values(
    spec: MoranSpec,
    k_lo: int,
    k_hi: int,
    bracket: RootBracket = DEFAULT_BRACKET,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> np.ndarray:
    """s_k for k_lo <= k <= k_hi."""
    if spec.homogeneous:
        return build_level_table(spec, k_lo, k_hi, max_levels).s
    return pair_roots(spec, [(0, k) for k in range(k_lo, k_hi + 1)], bracket, max_levels)


@dataclass
class ClassicEstimates:
    """Window estimates of s_*, s^* and the s^** profile.

    Attributes:
        window: (K_lo, K_hi) the estimates were taken over
        s_star_est: min s_k over the window
        s_upperstar_est: max s_k over the window
        s_doublestar_profile: (m, max_k s_{k,k+m}) for each requested m that fits
        argmin_level: Level attaining s_star_est
        argmax_level: Level attaining s_upperstar_est
    """

    window: tuple[int, int]
    s_star_est: float
    s_upperstar_est: float
    s_doublestar_profile: list[tuple[int, float]] = field(default_factory=list)
    argmin_level: int = 0
    argmax_level: int = 0

    @property
    def assouad_est(self) -> float | None:
        """Largest profile value, or None when no m fits the window."""
        return max((v for _, v in self.s_doublestar_profile), default=None)


def _homogeneous_profile(spec: MoranSpec, k_lo: int, k_hi: int, steps: Sequence[int]) -> list[tuple[int, float]]:
    log_n = np.concatenate([a.log_n for a in iter_level_arrays(spec.rule, k_lo + 1, k_hi)])
    log_c = np.concatenate([a.log_c for a in iter_level_arrays(spec.rule, k_lo + 1, k_hi)])
    # cn[j] = sum over levels k_lo+1..k_lo+j
    cn = np.concatenate([[0.0], np.cumsum(log_n)])
    cc = np.concatenate([[0.0], np.cumsum(log_c)])
    profile = []
    for m in steps:
        if m > k_hi - k_lo:
            continue
        values = -(cn[m:] - cn[:-m]) / (cc[m:] - cc[:-m])
        profile.append((m, float(values.max())))
    return profile


def classic_dim_estimates(
    spec: MoranSpec,
    window: tuple[int, int],
    m_list: Sequence[int] = (1, 2, 4, 8, 16),
    bracket: RootBracket = DEFAULT_BRACKET,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> ClassicEstimates:
    """Estimate s_*, s^* and s^** over levels K_lo..K_hi.

    Raises:
        DomainError: If not 1 <= K_lo < K_hi or the rule stops before K_hi
    """
    k_lo, k_hi = window
    if not 1 <= k_lo < k_hi:
        raise DomainError(f"Window needs 1 <= K_lo < K_hi, got [{k_lo}, {k_hi}]")
    check_level(k_hi)
    spec.check_range(k_hi)
    if any(m < 1 for m in m_list):
        raise DomainError(f"Assouad steps must be positive, got {list(m_list)}")

    s = s_k_values(spec, k_lo, k_hi, bracket, max_levels)
    i_min = int(np.argmin(s))
    i_max = int(np.argmax(s))
    if spec.homogeneous:
        profile = _homogeneous_profile(spec, k_lo, k_hi, m_list)
    else:
        profile = []
        for m in m_list:
            if m > k_hi - k_lo:
                continue
            roots = pair_roots(spec, [(k, k + m) for k in range(k_lo, k_hi - m + 1)], bracket, max_levels)
            profile.append((m, float(roots.max())))
    logger.debug("Classic estimates over [%d, %d]: min %.12g, max %.12g", k_lo, k_hi, s[i_min], s[i_max])
    return ClassicEstimates(
        window=(k_lo, k_hi),
        s_star_est=float(s[i_min]),
        s_upperstar_est=float(s[i_max]),
        s_doublestar_profile=profile,
        argmin_level=k_lo + i_min,
        argmax_level=k_lo + i_max,
    )


@dataclass
class GapReport:
    """Consecutive-gap check |s_k - s_{k+1}| <= |log n_{k+1} / P_{k+1}| + d |log c_{k+1} / P_{k+1}|.

    Attributes:
        window: Levels (K_lo, K_hi) whose consecutive pairs were checked
        max_gap: Largest |s_k - s_{k+1}|
        max_bound: Largest bound value
        worst_level: k of the pair closest to its bound (largest gap / bound)
        holds: True iff every pair is within its bound
    """

    window: tuple[int, int]
    max_gap: float
    max_bound: float
    worst_level: int
    holds: bool


def gap_bound_report(spec: MoranSpec, window: tuple[int, int], max_levels: int = DEFAULT_MAX_LEVELS) -> GapReport:
    """Check the consecutive-gap bound for every pair (k, k + 1) in a window."""
    require_homogeneous(spec, "gap_bound_report")
    k_lo, k_hi = window
    if not 1 <= k_lo < k_hi:
        raise DomainError(f"Window needs 1 <= K_lo < K_hi, got [{k_lo}, {k_hi}]")
    table = build_level_table(spec, k_lo, k_hi, max_levels)
    log_n = np.concatenate([a.log_n for a in iter_level_arrays(spec.rule, k_lo + 1, k_hi)])
    log_c = np.concatenate([a.log_c for a in iter_level_arrays(spec.rule, k_lo + 1, k_hi)])
    p_next = table.log_c_sum[1:]
    gaps = np.abs(np.diff(table.s))
    bounds = np.abs(log_n / p_next) + spec.ambient_dim * np.abs(log_c / p_next)
    within = gaps <= bounds * (1.0 + GAP_RTOL) + math.ulp(1.0)
    ratio = gaps / np.maximum(bounds, np.finfo(float).tiny)
    return GapReport(
        window=(k_lo, k_hi),
        max_gap=float(gaps.max()),
        max_bound=float(bounds.max()),
        worst_level=k_lo + int(np.argmax(ratio)),
        holds=bool(within.all()),
    )
