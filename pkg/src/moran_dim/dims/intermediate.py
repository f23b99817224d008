# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Intermediate dimension spectra.

This module provides:
- l_of_k_theta(): deepest level still above the fine scale (c_1...c_k)^(1/θ)
- delta_band(): (k(δ), l(δ)) for a homogeneous spec
- s_delta_theta_homog(): band minimum of s_m
- spectrum(): upper and lower spectra over a θ-grid with window diagnostics
- check_spectrum(): ordering, sandwich and monotonicity checks on a result
- c_star_zero_hypothesis(): log c̲_k / log M_k trend over a window

Homogeneous specs take the band-minimum path: g(k) = min of s_m over
k <= m <= min(l(k, θ), K), upper = max of g and lower = min of s_k over the
window. Other specs sample δ along M_k and solve the cut-set DP at each scale.
"""

import logging
import math
import threading
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from moran_dim.contract.enums import ConvergenceLabel, HypothesisLabel, SpectrumPath
from moran_dim.core.errors import DomainError, ResourceError
from moran_dim.core.levels import (
    DEFAULT_MAX_LEVELS,
    build_level_table,
    first_level_at_or_below,
    require_homogeneous,
    threshold_levels,
)
from moran_dim.core.ratios import check_level
from moran_dim.core.spec import MoranSpec, log_max_prefix
from moran_dim.dims.classic import GapReport, gap_bound_report, pair_roots
from moran_dim.dims.cutsets import DEFAULT_DP_NODES, AdmissibleBand, CutSetLattice
from moran_dim.dims.roots import DEFAULT_BRACKET, RootBracket
from moran_dim.dims.windows import BlockedRangeMin, Window, WindowPolicy
from moran_dim.rules.base import CHUNK, iter_level_arrays

logger = logging.getLogger(__name__)

# Absolute slack for ordering and monotonicity checks on emitted rows
ORDER_TOL = 1e-12

# Slack between subsequence rows, which are independent bisection roots
ROOT_ORDER_TOL = 1e-10

# Fitted log-log order at or below which the hypothesis ratio counts as decreasing to 0
HYPOTHESIS_ORDER = -0.25


# ============================================================================
# Bands
# ============================================================================


def _check_theta(theta: float) -> None:
    if not 0.0 < theta <= 1.0:
        raise DomainError(f"θ must be in (0, 1], got {theta}")


def l_of_k_theta(spec: MoranSpec, k: int, theta: float, max_levels: int = DEFAULT_MAX_LEVELS) -> int:
    """The unique l with c_1...c_l <= (c_1...c_k)^(1/θ) < c_1...c_{l-1}.

    Raises:
        UnsupportedCombination: If the spec is not homogeneous
    """
    require_homogeneous(spec, "l_of_k_theta")
    _check_theta(theta)
    check_level(k)
    return first_level_at_or_below(spec, log_max_prefix(spec, k) / theta, start=k, max_levels=max_levels)


def delta_band(
    spec: MoranSpec, log_delta: float, theta: float, max_levels: int = DEFAULT_MAX_LEVELS
) -> tuple[int, int]:
    """(k(δ), l(δ)) for a homogeneous spec.

    Raises:
        DomainError: If δ >= c_1
    """
    require_homogeneous(spec, "delta_band")
    _check_theta(theta)
    log_c1 = spec.level(1).log_max
    if log_delta >= log_c1:
        raise DomainError(f"δ must be below c_1 = {math.exp(log_c1):.6g}, got log δ = {log_delta:.6g}")
    k = first_level_at_or_below(spec, log_delta, start=1, max_levels=max_levels)
    l = first_level_at_or_below(spec, log_delta / theta, start=k, max_levels=max_levels)
    return k, l


def s_delta_theta_homog(
    spec: MoranSpec, log_delta: float, theta: float, max_levels: int = DEFAULT_MAX_LEVELS
) -> float:
    """min of s_m over k(δ) <= m <= l(δ)."""
    k, l = delta_band(spec, log_delta, theta, max_levels)
    return float(build_level_table(spec, k, l, max_levels).s.min())


# ============================================================================
# Spectrum
# ============================================================================


@dataclass(frozen=True)
class SpectrumRow:
    """Upper and lower estimates at one θ over both windows."""

    theta: float
    upper: float
    lower: float
    upper_window2: float
    lower_window2: float
    label: ConvergenceLabel

    @property
    def converged(self) -> bool:
        return self.label is not ConvergenceLabel.UNCONVERGED


@dataclass
class SpectrumResult:
    """Spectrum estimates over a θ-grid.

    Attributes:
        rows: One row per θ, in grid order
        depth: Deepest level used (K)
        policy: Window policy the estimates were taken with
        path: Homogeneous band path or M_k subsequence sampling
        ambient_dim: d of the spec
        s_star_est: (W1, W2) minima of s_k
        s_upperstar_est: (W1, W2) maxima of s_k
        gap: Consecutive-gap report over W1 (homogeneous path only)
    """

    rows: list[SpectrumRow]
    depth: int
    policy: WindowPolicy
    path: SpectrumPath
    ambient_dim: int
    s_star_est: tuple[float, float]
    s_upperstar_est: tuple[float, float]
    gap: GapReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([r.theta for r in self.rows])

    @property
    def upper(self) -> np.ndarray:
        return np.array([r.upper for r in self.rows])

    @property
    def lower(self) -> np.ndarray:
        return np.array([r.lower for r in self.rows])

    @property
    def windows(self) -> tuple[Window, Window]:
        return self.policy.windows(self.depth)

    def row(self, theta: float) -> SpectrumRow:
        for r in self.rows:
            if math.isclose(r.theta, theta, rel_tol=0.0, abs_tol=1e-12):
                return r
        raise KeyError(f"θ = {theta} is not on the grid")

    def describe(self) -> str:
        return f"{self.path.value} path, {self.policy.describe(self.depth)}"


def _label(policy: WindowPolicy, upper: tuple[float, float], lower: tuple[float, float]) -> ConvergenceLabel:
    return ConvergenceLabel.CONVERGED if policy.converged(upper, lower) else ConvergenceLabel.UNCONVERGED


def _definitional_row(policy: WindowPolicy, s_star: tuple[float, float]) -> SpectrumRow:
    label = ConvergenceLabel.DEFINITIONAL if policy.converged(s_star, s_star) else ConvergenceLabel.UNCONVERGED
    return SpectrumRow(0.0, s_star[0], s_star[0], s_star[1], s_star[1], label)


class _HomogeneousSweep:
    """Shared level table and range-minimum structure for all θ of one run."""

    def __init__(self, spec: MoranSpec, depth: int, policy: WindowPolicy, max_levels: int):
        self.policy = policy
        self.w1, self.w2 = policy.windows(depth)
        self.table = build_level_table(spec, self.w2.lo, depth, max_levels)
        self.range_min = BlockedRangeMin(self.table.s)
        s = self.table.s
        w1 = s[self.table.slice(self.w1.lo, self.w1.hi)]
        w2 = s[self.table.slice(self.w2.lo, self.w2.hi)]
        self.s_star = (float(w1.min()), float(w2.min()))
        self.s_upperstar = (float(w1.max()), float(w2.max()))

    def _band_maxima(self, theta: float) -> tuple[float, float]:
        """max of g over W1 and over W2."""
        log_c_sum = self.table.log_c_sum
        last = len(log_c_sum) - 1
        i1 = self.table.index(self.w1.lo)
        i2_hi = self.table.index(self.w2.hi)
        best1 = -math.inf
        best2 = -math.inf
        for lo in range(0, len(log_c_sum), CHUNK):
            starts = np.arange(lo, min(lo + CHUNK, len(log_c_sum)))
            stops = threshold_levels(log_c_sum, log_c_sum[starts] / theta)
            stops = np.clip(stops, starts, last)
            g = self.range_min.query(starts, stops)
            in1 = starts >= i1
            in2 = starts <= i2_hi
            if in1.any():
                best1 = max(best1, float(g[in1].max()))
            if in2.any():
                best2 = max(best2, float(g[in2].max()))
        return best1, best2

    def row(self, theta: float) -> SpectrumRow:
        if theta == 0.0:
            return _definitional_row(self.policy, self.s_star)
        upper = self._band_maxima(theta)
        logger.debug("θ = %g: upper %.12g (W2 %.12g)", theta, upper[0], upper[1])
        label = _label(self.policy, upper, self.s_star)
        return SpectrumRow(theta, upper[0], self.s_star[0], upper[1], self.s_star[1], label)


class _NodeBudget:
    """DP node allowance shared by every lattice of one spectrum run."""

    def __init__(self, total: int):
        self.total = total
        self.used = 0
        self._lock = threading.Lock()

    @property
    def remaining(self) -> int:
        with self._lock:
            return self.total - self.used

    def charge(self, nodes: int) -> None:
        with self._lock:
            self.used += nodes
            used = self.used
        if used > self.total:
            raise ResourceError(
                f"Spectrum needs more than {self.total} cut-set DP nodes; "
                "lower the depth, narrow the windows or raise budgets.dp_nodes"
            )


class _SubsequenceSweep:
    """s_{δ,θ} along δ = M_k for k in W1 ∪ W2, by the cut-set DP."""

    def __init__(
        self,
        spec: MoranSpec,
        depth: int,
        policy: WindowPolicy,
        bracket: RootBracket,
        max_nodes: int,
        max_levels: int,
    ):
        self.spec = spec
        self.policy = policy
        self.bracket = bracket
        self.budget = _NodeBudget(max_nodes)
        self.w1, self.w2 = policy.windows(depth)
        spec.check_range(depth)
        self.levels = np.arange(self.w2.lo, depth + 1)
        log_max = np.concatenate([a.log_max for a in iter_level_arrays(spec.rule, 1, depth)])
        self.log_m = np.cumsum(log_max)[self.levels - 1]
        s = pair_roots(spec, [(0, int(k)) for k in self.levels], bracket, max_levels)
        self.in1 = self.levels >= self.w1.lo
        self.in2 = self.levels <= self.w2.hi
        self.s_star = (float(s[self.in1].min()), float(s[self.in2].min()))
        self.s_upperstar = (float(s[self.in1].max()), float(s[self.in2].max()))

    def _solve(self, log_delta: float, theta: float) -> float:
        lattice = CutSetLattice(self.spec, AdmissibleBand.from_scale(log_delta, theta), self.budget.remaining)
        self.budget.charge(lattice.node_count)
        return lattice.root(self.bracket)

    def row(self, theta: float) -> SpectrumRow:
        if theta == 0.0:
            return _definitional_row(self.policy, self.s_star)
        values = np.array([self._solve(float(log_delta), theta) for log_delta in self.log_m])
        upper = (float(values[self.in1].max()), float(values[self.in2].max()))
        lower = (float(values[self.in1].min()), float(values[self.in2].min()))
        logger.debug("θ = %g: subsequence upper %.12g, lower %.12g", theta, upper[0], lower[0])
        return SpectrumRow(theta, upper[0], lower[0], upper[1], lower[1], _label(self.policy, upper, lower))


def spectrum(
    spec: MoranSpec,
    thetas: Sequence[float],
    depth: int,
    policy: WindowPolicy | None = None,
    *,
    bracket: RootBracket = DEFAULT_BRACKET,
    workers: int = 1,
    max_nodes: int = DEFAULT_DP_NODES,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> SpectrumResult:
    """Upper and lower intermediate dimension estimates over a θ-grid.

    Args:
        spec: Spec to evaluate
        thetas: Grid in [0, 1]; θ = 0 rows are the s_* estimate
        depth: Deepest level K
        policy: Window policy (defaults to tail fraction 0.5)
        bracket: Root bracket for the general path
        workers: Threads evaluating θ values concurrently
        max_nodes: Cut-set DP node budget for the whole run (general path)
        max_levels: Level-table budget (homogeneous path)

    Raises:
        ResourceError: If a budget is exceeded
        DomainError: If the grid or depth is invalid
    """
    policy = policy or WindowPolicy()
    grid = [float(t) for t in thetas]
    if not grid:
        raise DomainError("θ-grid is empty")
    for t in grid:
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"θ value {t} is outside [0, 1]")
    check_level(depth)
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")

    if spec.homogeneous:
        sweep = _HomogeneousSweep(spec, depth, policy, max_levels)
        path = SpectrumPath.HOMOGENEOUS
    else:
        sweep = _SubsequenceSweep(spec, depth, policy, bracket, max_nodes, max_levels)
        path = SpectrumPath.SUBSEQUENCE
    logger.info("Computing %d-point spectrum of %s (%s path)", len(grid), spec.describe(), path.value)

    if workers == 1:
        rows = [sweep.row(t) for t in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(sweep.row, grid))

    result = SpectrumResult(
        rows=rows,
        depth=depth,
        policy=policy,
        path=path,
        ambient_dim=spec.ambient_dim,
        s_star_est=sweep.s_star,
        s_upperstar_est=sweep.s_upperstar,
    )
    w1, _ = policy.windows(depth)
    if spec.homogeneous and len(w1) > 1:
        result.gap = gap_bound_report(spec, (w1.lo, w1.hi), max_levels)
    if path is SpectrumPath.SUBSEQUENCE:
        result.notes.append("δ sampled along M_k only; values are subsequence estimates")
    return result


def check_spectrum(result: SpectrumResult) -> list[str]:
    """Ordering, sandwich, monotonicity and θ = 1 checks on a result.

    Returns:
        One message per failed check; empty when every row passes
    """
    problems: list[str] = []
    d = result.ambient_dim
    tol = ORDER_TOL if result.path is SpectrumPath.HOMOGENEOUS else ROOT_ORDER_TOL
    for r in result.rows:
        if not -tol <= r.lower <= r.upper + tol or r.upper > d + tol:
            problems.append(f"θ = {r.theta:g}: expected 0 <= lower <= upper <= {d}, got {r.lower!r}, {r.upper!r}")

    banded = [r for r in result.rows if r.theta > 0]
    for a, b in zip(banded, banded[1:], strict=False):
        if b.upper < a.upper - tol or b.lower < a.lower - tol:
            problems.append(f"Spectrum decreases between θ = {a.theta:g} and θ = {b.theta:g}")

    if result.path is SpectrumPath.HOMOGENEOUS:
        lo, hi = result.s_star_est[0], result.s_upperstar_est[0]
        for r in result.rows:
            if r.lower < lo - ORDER_TOL or r.upper > hi + ORDER_TOL:
                problems.append(f"θ = {r.theta:g}: outside the [s_*, s^*] window estimates [{lo!r}, {hi!r}]")
        for r in result.rows:
            if r.theta == 1.0 and (abs(r.upper - hi) > ORDER_TOL or abs(r.lower - lo) > ORDER_TOL):
                problems.append(f"θ = 1 row ({r.lower!r}, {r.upper!r}) differs from box estimates ({lo!r}, {hi!r})")
    return problems


# ============================================================================
# c_* -> 0 hypothesis
# ============================================================================


@dataclass
class HypothesisReport:
    """Trend of log c̲_k / log M_k over a window.

    Attributes:
        window: Levels examined
        levels: k values
        ratios: log c̲_k / log M_k per level
        order: Least-squares slope of log ratio against log k
        non_increasing: Whether the ratio never increases over the window
        c_star_bounded: Whether the tail half reaches no smaller ratio than the head half
        label: bounded, conditional or unsupported
    """

    window: tuple[int, int]
    levels: np.ndarray
    ratios: np.ndarray
    order: float
    non_increasing: bool
    c_star_bounded: bool
    label: HypothesisLabel

    @property
    def final_ratio(self) -> float:
        return float(self.ratios[-1])


def _window_extremes(spec: MoranSpec, k_lo: int, k_hi: int) -> tuple[np.ndarray, np.ndarray]:
    """(log M_k, log c̲_k) for k_lo <= k <= k_hi."""
    log_m = []
    log_min = []
    carry = 0.0
    for arrays in iter_level_arrays(spec.rule, 1, k_hi):
        cum = carry + np.cumsum(arrays.log_max)
        carry = float(cum[-1])
        keep = slice(max(k_lo - arrays.k_lo, 0), None)
        if arrays.k_hi >= k_lo:
            log_m.append(cum[keep])
            log_min.append(arrays.log_min[keep])
    return np.concatenate(log_m), np.concatenate(log_min)


def c_star_zero_hypothesis(spec: MoranSpec, window: tuple[int, int]) -> HypothesisReport:
    """log c̲_k / log M_k over k_lo <= k <= k_hi and its trend.

    Ratios bounded away from 0 are labelled bounded. Otherwise the spectra hold
    conditionally when the ratio is non-increasing with fitted log-log order at
    most HYPOTHESIS_ORDER, and are unsupported when it is not.
    """
    k_lo, k_hi = window
    if not 1 <= k_lo < k_hi:
        raise DomainError(f"Window needs 1 <= K_lo < K_hi, got [{k_lo}, {k_hi}]")
    check_level(k_hi)
    spec.check_range(k_hi)
    log_m, log_min = _window_extremes(spec, k_lo, k_hi)
    levels = np.arange(k_lo, k_hi + 1)
    ratios = log_min / log_m

    order = float(np.polyfit(np.log(levels), np.log(ratios), 1)[0])
    non_increasing = bool(np.all(np.diff(ratios) <= ORDER_TOL * np.abs(ratios[:-1])))
    half = len(log_min) // 2
    bounded = bool(log_min[half:].min() >= log_min[:half].min() * (1 + ORDER_TOL))
    if bounded:
        label = HypothesisLabel.BOUNDED
    elif non_increasing and order <= HYPOTHESIS_ORDER:
        label = HypothesisLabel.CONDITIONAL
    else:
        label = HypothesisLabel.UNSUPPORTED
    logger.debug("Hypothesis ratio over [%d, %d]: order %.3g, %s", k_lo, k_hi, order, label.value)
    return HypothesisReport(
        window=(k_lo, k_hi),
        levels=levels,
        ratios=ratios,
        order=order,
        non_increasing=non_increasing,
        c_star_bounded=bounded,
        label=label,
    )
