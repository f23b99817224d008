# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Per-level contraction data.

A RatioVector stores the children of one level as runs of equal ratios in log
space, so levels with 2^k children or ratios far below float range stay exact.
"""

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from moran_dim.core.errors import ConfigError, DomainError, Violation

# Deepest level any rule or word may address
MAX_LEVEL = 2**31

# Slack on log(sum c^d) <= 0
MSC_LOG_TOL = 1e-12


def check_level(k: int) -> int:
    """Validate a level index and return it unchanged."""
    if k < 1:
        raise DomainError(f"Level must be >= 1, got {k}")
    if k > MAX_LEVEL:
        raise ConfigError(f"Level {k} exceeds the supported maximum 2^31")
    return k


def _safe_log(ratio: float) -> float:
    if math.isnan(ratio):
        return math.nan
    return math.log(ratio) if ratio > 0 else -math.inf


@dataclass(frozen=True)
class RatioVector:
    """Contraction ratios c_{k,1..n_k} of one level, run-length encoded.

    Attributes:
        log_ratios: Natural log of each run's ratio, in child order
        counts: Number of consecutive children sharing that ratio
    """

    log_ratios: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.log_ratios or len(self.log_ratios) != len(self.counts):
            raise DomainError("RatioVector needs one count per ratio run")
        if any(c < 1 for c in self.counts):
            raise DomainError(f"Ratio run counts must be positive, got {self.counts}")

    @classmethod
    def from_ratios(cls, ratios: Sequence[float]) -> "RatioVector":
        """Build from plain ratios, merging consecutive equal values."""
        if not ratios:
            raise DomainError("A level needs at least one ratio")
        logs: list[float] = []
        counts: list[int] = []
        previous: float | None = None
        for r in ratios:
            r = float(r)
            if previous is not None and r == previous:
                counts[-1] += 1
            else:
                logs.append(_safe_log(r))
                counts.append(1)
            previous = r
        return cls(tuple(logs), tuple(counts))

    @classmethod
    def uniform(cls, n: int, ratio: float) -> "RatioVector":
        return cls((_safe_log(ratio),), (int(n),))

    @classmethod
    def uniform_log(cls, n: int, log_ratio: float) -> "RatioVector":
        return cls((float(log_ratio),), (int(n),))

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def log_n(self) -> float:
        return math.log(self.n)

    @property
    def log_counts(self) -> np.ndarray:
        return np.array([math.log(c) for c in self.counts])

    @property
    def is_uniform(self) -> bool:
        return len(set(self.log_ratios)) == 1

    @property
    def log_max(self) -> float:
        return max(self.log_ratios)

    @property
    def log_min(self) -> float:
        return min(self.log_ratios)

    def log_power_sum(self, s: float) -> float:
        """log of sum_j c_j^s, evaluated without leaving log space."""
        if s == 0:
            return self.log_n
        return float(logsumexp(s * np.asarray(self.log_ratios) + self.log_counts))

    def log_ratio(self, j: int) -> float:
        """Log ratio of the 1-based child j."""
        if j < 1:
            raise DomainError(f"Child index must be >= 1, got {j}")
        upto = 0
        for log_c, count in zip(self.log_ratios, self.counts, strict=True):
            upto += count
            if j <= upto:
                return log_c
        raise DomainError(f"Child index {j} out of range (n={self.n})")

    def children(self) -> Iterator[tuple[int, float]]:
        """Yield (1-based index, log ratio) for every child."""
        j = 1
        for log_c, count in zip(self.log_ratios, self.counts, strict=True):
            for _ in range(count):
                yield j, log_c
                j += 1

    def violations(self, k: int, ambient_dim: int) -> list[Violation]:
        """Check n_k >= 2, every ratio in (0, 1) and sum c^d <= 1."""
        found: list[Violation] = []
        if self.n < 2:
            found.append(Violation(k=k, reason=f"n_k = {self.n} < 2"))
        first_child = 1
        ratios_ok = True
        for log_c, count in zip(self.log_ratios, self.counts, strict=True):
            if not (math.isfinite(log_c) and log_c < 0):
                ratio = math.exp(log_c) if not math.isnan(log_c) else math.nan
                found.append(Violation(k=k, j=first_child, reason=f"ratio {ratio:.6g} not in (0, 1)"))
                ratios_ok = False
            first_child += count
        if ratios_ok:
            log_volume = self.log_power_sum(ambient_dim)
            if log_volume > MSC_LOG_TOL:
                volume = math.exp(min(log_volume, 700.0))
                found.append(Violation(k=k, reason=f"sum c^d = {volume:.6g} > 1"))
        return found
