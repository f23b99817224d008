# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Root finding for strictly decreasing functions of the exponent s.

Every root in this package solves g(s) = 0 for a log-sum g that is strictly
decreasing in s with g(0) > 0 and g(d) <= 0, so bisection on [0, d] always
brackets it.

Levels whose ratios sum to exactly 1 give g(d) = 0 up to rounding, so values
within ZERO_TOL (relative to |g(0)|) of zero count as zero at the bracket ends.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import root_scalar

from moran_dim.core.errors import DomainError, NumericError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootBracket:
    """Search interval and stopping rule for bisection.

    Attributes:
        lo: Lower end of the initial bracket
        hi: Upper end of the initial bracket
        tol: Absolute tolerance on the root
        max_iter: Iteration cap
    """

    lo: float = 0.0
    hi: float = 1.0
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo < self.hi:
            raise DomainError(f"Root bracket needs 0 <= lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol > 0:
            raise DomainError(f"Root tolerance must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")

    def iterations(self, width: float) -> int:
        """Halvings needed to shrink width below tol, capped at max_iter."""
        return min(self.max_iter, max(1, math.ceil(math.log2(width / self.tol)) + 1))


DEFAULT_BRACKET = RootBracket()

# Rounding slack for g at the bracket ends, scaled by max(1, |g(0)|)
ZERO_TOL = 1e-12


def _zero_slack(f_lo: float | np.ndarray) -> float | np.ndarray:
    return ZERO_TOL * np.maximum(1.0, np.abs(f_lo))


def solve_decreasing(func: Callable[[float], float], bracket: RootBracket, upper: float) -> float:
    """Root of a strictly decreasing func by bisection.

    The bracket is widened to [0, upper] when it does not straddle the root.

    Raises:
        NumericError: If [0, upper] does not straddle the root either, or
            bisection does not converge within max_iter
    """
    lo, hi = bracket.lo, min(bracket.hi, float(upper))
    f_lo, f_hi = (func(lo), func(hi)) if lo < hi else (math.nan, math.nan)
    slack = float(_zero_slack(f_lo))
    if not (f_lo >= -slack and f_hi <= slack):
        logger.debug("Widening bracket [%g, %g] to [0, %g]", lo, hi, upper)
        lo, hi = 0.0, float(upper)
        f_lo, f_hi = func(lo), func(hi)
        slack = float(_zero_slack(f_lo))
        if not (f_lo >= -slack and f_hi <= slack):
            raise NumericError(f"No sign change on [0, {upper}]: g(0) = {f_lo:.6g}, g({upper}) = {f_hi:.6g}")
    if abs(f_lo) <= slack:
        return lo
    if abs(f_hi) <= slack:
        return hi
    result = root_scalar(func, bracket=[lo, hi], method="bisect", xtol=bracket.tol, maxiter=bracket.max_iter)
    if not result.converged:
        raise NumericError(f"Bisection did not converge on [{lo}, {hi}]: {result.flag}")
    return float(result.root)


def bisect_many(
    func: Callable[[np.ndarray], np.ndarray],
    count: int,
    bracket: RootBracket,
    upper: float,
) -> np.ndarray:
    """Roots of `count` strictly decreasing functions evaluated together.

    func maps an array of `count` exponents to the `count` function values,
    element i belonging to function i. All roots are searched on [0, upper].

    Raises:
        NumericError: If some function has no sign change on [0, upper]
    """
    lo = np.zeros(count)
    hi = np.full(count, float(upper))
    f_lo = func(lo)
    f_hi = func(hi)
    slack = _zero_slack(f_lo)
    bad = ~((f_lo >= -slack) & (f_hi <= slack))
    if bad.any():
        i = int(np.argmax(bad))
        raise NumericError(f"No sign change on [0, {upper}] for function {i}: {f_lo[i]:.6g}, {f_hi[i]:.6g}")
    exact_lo = np.abs(f_lo) <= slack
    exact_hi = (np.abs(f_hi) <= slack) & ~exact_lo
    for _ in range(bracket.iterations(float(upper))):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        above = f_mid > 0
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    roots = 0.5 * (lo + hi)
    roots[exact_hi] = float(upper)
    roots[exact_lo] = 0.0
    return roots
