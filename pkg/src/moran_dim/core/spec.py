# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Moran set specifications.

A MoranSpec pairs the ambient dimension d with a level rule. The seed set is
normalized to |J| = 1 and every diameter is kept as a natural log.

Operations:
- validate_spec: check the Moran structure conditions up to a depth
- level_params: (n_k, φ_k) of one level
- extreme_diameters: (log M_k, log c̲_k)
- product_spec: level-square product of two homogeneous specs
"""

import logging
import math
import threading
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from moran_dim.core.errors import DomainError, SpecValidationError, UnsupportedCombination, Violation
from moran_dim.core.ratios import MSC_LOG_TOL, RatioVector, check_level
from moran_dim.rules.base import LevelRule, iter_level_arrays
from moran_dim.rules.product import RATIO_RTOL, ProductRule

logger = logging.getLogger(__name__)

# Violations kept in a report; validation keeps counting past this
MAX_REPORTED_VIOLATIONS = 100

# Levels compared when checking that two specs share their ratio sequence
PRODUCT_PROBE_LEVELS = 4096


class LevelMemo:
    """Thread-safe per-level cache of ratio vectors.

    The cache is cleared when it reaches max_entries, so memory stays bounded
    during streaming sweeps.
    """

    def __init__(self, max_entries: int = 4096):
        self._entries: dict[int, RatioVector] = {}
        self._lock = threading.Lock()
        self.max_entries = max_entries

    def get(self, k: int, compute: Callable[[int], RatioVector]) -> RatioVector:
        with self._lock:
            cached = self._entries.get(k)
        if cached is not None:
            return cached
        vector = compute(k)
        with self._lock:
            if len(self._entries) >= self.max_entries:
                self._entries.clear()
            self._entries[k] = vector
        return vector

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


@dataclass(frozen=True)
class MoranSpec:
    """Construction data of a Moran set.

    Attributes:
        ambient_dim: Dimension d of the ambient space
        rule: Level rule producing (n_k, φ_k)
        name: Optional label (preset name or source path)
    """

    ambient_dim: int
    rule: LevelRule
    name: str | None = None
    _memo: LevelMemo = field(default_factory=LevelMemo, compare=False, repr=False)

    def __post_init__(self) -> None:
        if int(self.ambient_dim) != self.ambient_dim or self.ambient_dim < 1:
            raise DomainError(f"ambient_dim must be a positive integer, got {self.ambient_dim}")

    @property
    def homogeneous(self) -> bool:
        return self.rule.homogeneous

    def check_range(self, k_hi: int) -> None:
        """Raise DomainError if the rule stops before level k_hi."""
        limit = self.rule.max_level
        if limit is not None and k_hi > limit:
            raise DomainError(f"{self.rule.describe()} is defined up to level {limit}; level {k_hi} requested")

    def level(self, k: int) -> RatioVector:
        check_level(k)
        self.check_range(k)
        return self._memo.get(k, self.rule.level)

    def describe(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"{label}{self.rule.describe()}, d={self.ambient_dim}"


@dataclass
class ValidationReport:
    """Result of validate_spec.

    Attributes:
        depth: Levels checked (1..depth)
        homogeneous: Whether the rule is homogeneous
        violations: First violations found, in level order
        violation_count: Total number of violations
        log_c_star: Window infimum of log c_{k,j} over levels 1..depth
        c_star_bounded: False when the tail half of the window reaches a
            smaller ratio than the head half (c_* -> 0 suspected)
    """

    depth: int
    homogeneous: bool
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    log_c_star: float = 0.0
    c_star_bounded: bool = True

    @property
    def valid(self) -> bool:
        return self.violation_count == 0

    @property
    def c_star(self) -> float:
        return math.exp(self.log_c_star)

    @property
    def c_star_label(self) -> str:
        return "bounded away from 0" if self.c_star_bounded else "c_* -> 0"

    def raise_for_violations(self) -> None:
        if not self.valid:
            raise SpecValidationError(self.violations)


def _homogeneous_violations(spec: MoranSpec, depth: int, report: ValidationReport) -> None:
    d = spec.ambient_dim
    for arrays in iter_level_arrays(spec.rule, 1, depth):
        log_c = arrays.log_c
        few = arrays.log_n < math.log(2) - MSC_LOG_TOL
        bad_ratio = ~(np.isfinite(log_c) & (log_c < 0))
        with np.errstate(invalid="ignore"):
            over = ~bad_ratio & (arrays.log_n + d * log_c > MSC_LOG_TOL)
        flagged = np.nonzero(few | bad_ratio | over)[0]
        report.violation_count += int(few.sum() + bad_ratio.sum() + over.sum())
        for i in flagged:
            if len(report.violations) >= MAX_REPORTED_VIOLATIONS:
                return
            k = arrays.k_lo + int(i)
            report.violations.extend(spec.rule.level(k).violations(k, d))


def _general_violations(spec: MoranSpec, depth: int, report: ValidationReport) -> None:
    seen: dict[RatioVector, list[Violation]] = {}
    for k in range(1, depth + 1):
        vector = spec.level(k)
        if vector not in seen:
            seen[vector] = vector.violations(k, spec.ambient_dim)
        found = [Violation(k=k, j=v.j, reason=v.reason) for v in seen[vector]]
        report.violation_count += len(found)
        room = MAX_REPORTED_VIOLATIONS - len(report.violations)
        report.violations.extend(found[: max(room, 0)])


def _window_c_star(spec: MoranSpec, depth: int) -> tuple[float, bool]:
    half = depth // 2
    head = math.inf
    tail = math.inf
    for arrays in iter_level_arrays(spec.rule, 1, depth):
        k = np.arange(arrays.k_lo, arrays.k_hi + 1)
        in_head = k <= half
        if in_head.any():
            head = min(head, float(arrays.log_min[in_head].min()))
        if (~in_head).any():
            tail = min(tail, float(arrays.log_min[~in_head].min()))
    log_c_star = min(head, tail)
    bounded = half == 0 or tail >= head - MSC_LOG_TOL * abs(head)
    return log_c_star, bounded


def validate_spec(spec: MoranSpec, depth: int, strict: bool = True) -> ValidationReport:
    """Check the Moran structure conditions for levels 1..depth.

    Args:
        spec: Spec to validate
        depth: Number of levels to check
        strict: Raise SpecValidationError on violations instead of returning them

    Returns:
        ValidationReport with the window c_* diagnostic

    Raises:
        DomainError: If depth < 1 or the rule stops before depth
        SpecValidationError: If strict and any level is invalid
    """
    check_level(depth)
    spec.check_range(depth)
    report = ValidationReport(depth=depth, homogeneous=spec.homogeneous)
    if spec.homogeneous:
        _homogeneous_violations(spec, depth, report)
    else:
        _general_violations(spec, depth, report)
    report.log_c_star, report.c_star_bounded = _window_c_star(spec, depth)
    logger.debug(
        "Validated %s to depth %d: %d violations, log c_* = %.6g",
        spec.describe(),
        depth,
        report.violation_count,
        report.log_c_star,
    )
    if strict:
        report.raise_for_violations()
    return report


def level_params(spec: MoranSpec, k: int) -> tuple[int, RatioVector]:
    """Return (n_k, φ_k) for level k."""
    vector = spec.level(k)
    return vector.n, vector


def log_max_prefix(spec: MoranSpec, k: int) -> float:
    """log M_k = sum of log(max_j c_{i,j}) over i <= k (0 for k = 0)."""
    if k == 0:
        return 0.0
    check_level(k)
    spec.check_range(k)
    return float(sum(float(np.sum(arrays.log_max)) for arrays in iter_level_arrays(spec.rule, 1, k)))


def extreme_diameters(spec: MoranSpec, k: int) -> tuple[float, float]:
    """Return (log M_k, log c̲_k), the largest level-k diameter and smallest level-k ratio."""
    check_level(k)
    log_max = log_max_prefix(spec, k)
    return log_max, float(spec.rule.level_arrays(k, k).log_min[0])


def product_spec(a: MoranSpec, b: MoranSpec) -> MoranSpec:
    """Level-square product of two homogeneous specs with identical ratios.

    Raises:
        UnsupportedCombination: If either spec is not homogeneous or their ratio
            sequences differ within the probe depth
    """
    for side in (a, b):
        if not side.homogeneous:
            raise UnsupportedCombination(f"product_spec needs homogeneous specs, got {side.describe()}")
    limits = [s.rule.max_level for s in (a, b) if s.rule.max_level is not None]
    probe = min([PRODUCT_PROBE_LEVELS, *limits])
    left = a.rule.level_arrays(1, probe).log_c
    right = b.rule.level_arrays(1, probe).log_c
    mismatch = ~np.isclose(left, right, rtol=RATIO_RTOL, atol=0.0)
    if mismatch.any():
        k = 1 + int(np.argmax(mismatch))
        raise UnsupportedCombination(
            f"Ratio sequences differ at level {k}: {math.exp(left[k - 1]):.6g} vs {math.exp(right[k - 1]):.6g}"
        )
    name = f"{a.name} x {b.name}" if a.name and b.name else None
    return MoranSpec(ambient_dim=a.ambient_dim + b.ambient_dim, rule=ProductRule(left=a.rule, right=b.rule), name=name)
