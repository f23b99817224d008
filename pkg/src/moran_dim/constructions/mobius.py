# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
The Möbius family: homogeneous Moran sets whose upper intermediate spectrum is
f(θ) = (Lθa + b) / ((Lθ + 1)c) on [1/L², 1], constant at the Hausdorff
dimension (a + Lb) / ((L + 1)c) below 1/L², with a = log M, b = log N,
c = log Q.

Levels use ratio 1/Q throughout. Block i of the geometric-sum schedule
(L + ... + L^(i-1), L + ... + L^i] has N children per node for odd i and M
for even i, so levels 1..L use N.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from moran_dim.core.errors import DomainError, VerificationMismatch
from moran_dim.core.spec import MoranSpec
from moran_dim.rules.blocks import BlockLevel, BlockScheduleRule

logger = logging.getLogger(__name__)

# The closed form and its exponent form must agree to this absolute tolerance
IDENTITY_TOL = 1e-12
IDENTITY_POINTS = 101

# a / b must be this close to an integer
RATIO_INT_TOL = 1e-9


@dataclass(frozen=True)
class ClosedFormRow:
    theta: float
    value: float
    exponent_form: float | None


@dataclass(frozen=True)
class MobiusFamily:
    """Integer parameters (L, M, N, Q) with L >= 2 and 2 <= N <= M < Q.

    The identity between the closed form and its exponent form is checked on
    construction.

    Raises:
        DomainError: Naming the failing constraint
        VerificationMismatch: If the two forms disagree
    """

    L: int
    M: int
    N: int
    Q: int

    def __post_init__(self) -> None:
        for name in ("L", "M", "N", "Q"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"Möbius parameter {name} must be an integer, got {value}")
        if self.L < 2:
            raise DomainError(f"Möbius family needs L >= 2, got L = {self.L}")
        if self.N < 2:
            raise DomainError(f"Möbius family needs N >= 2, got N = {self.N}")
        if self.N > self.M:
            raise DomainError(f"Möbius family needs N <= M, got N = {self.N} > M = {self.M}")
        if self.M >= self.Q:
            raise DomainError(f"Möbius family needs M < Q, got M = {self.M} >= Q = {self.Q}")
        self.check_identity()

    @property
    def a(self) -> float:
        return math.log(self.M)

    @property
    def b(self) -> float:
        return math.log(self.N)

    @property
    def c(self) -> float:
        return math.log(self.Q)

    @property
    def plateau_end(self) -> float:
        """1/L², below which the spectrum equals the Hausdorff dimension."""
        return 1.0 / self.L**2

    @property
    def hausdorff(self) -> float:
        return (self.a + self.L * self.b) / ((self.L + 1) * self.c)

    @property
    def upper_box(self) -> float:
        return self.closed_form(1.0)

    def closed_form(self, theta: float) -> float:
        if not 0.0 <= theta <= 1.0:
            raise DomainError(f"θ must be in [0, 1], got {theta}")
        if theta <= self.plateau_end:
            return self.hausdorff
        lt = self.L * theta
        return (lt * self.a + self.b) / ((lt + 1) * self.c)

    def exponent_form(self, theta: float) -> float:
        """(L log M + (1/θ) log N) / (-(L + 1/θ) log r) with r = 1/Q."""
        if not 0.0 < theta <= 1.0:
            raise DomainError(f"θ must be in (0, 1], got {theta}")
        log_r = -self.c
        return (self.L * self.a + self.b / theta) / (-(self.L + 1 / theta) * log_r)

    def check_identity(self) -> float:
        """Largest gap between the two forms on [1/L², 1]."""
        worst = 0.0
        for theta in np.linspace(self.plateau_end, 1.0, IDENTITY_POINTS):
            worst = max(worst, abs(self.closed_form(float(theta)) - self.exponent_form(float(theta))))
        if worst > IDENTITY_TOL:
            raise VerificationMismatch(f"Closed form and exponent form differ by {worst:.3g} for {self}")
        return worst

    def table(self, thetas: list[float]) -> list[ClosedFormRow]:
        return [
            ClosedFormRow(t, self.closed_form(t), self.exponent_form(t) if t > 0 else None) for t in thetas
        ]

    def rule(self) -> BlockScheduleRule:
        ratio = 1.0 / self.Q
        return BlockScheduleRule(
            boundary="geometric_sum",
            blocks=[BlockLevel(n=self.N, c=ratio), BlockLevel(n=self.M, c=ratio)],
            param=self.L,
        )

    @staticmethod
    def validate_exponents(L: int, a: float, b: float, c: float) -> int:
        """Check real (a, b, c) against the family constraints.

        Returns:
            The integer a / b

        Raises:
            DomainError: Naming the failing constraint
        """
        if int(L) != L or L < 2:
            raise DomainError(f"L must be an integer >= 2, got {L}")
        if not b > 0:
            raise DomainError(f"Need b > 0, got b = {b}")
        if not a >= b:
            raise DomainError(f"Need a >= b, got a = {a} < b = {b}")
        if not c > a:
            raise DomainError(f"Need c > a, got c = {c} <= a = {a}")
        ratio = a / b
        if abs(ratio - round(ratio)) > RATIO_INT_TOL:
            raise DomainError(f"a / b must be an integer, got {ratio:.12g}")
        return round(ratio)

    def __str__(self) -> str:
        return f"mobius(L={self.L}, M={self.M}, N={self.N}, Q={self.Q})"


def build_mobius_spec(family: MobiusFamily) -> MoranSpec:
    return MoranSpec(ambient_dim=1, rule=family.rule(), name=str(family))


def closed_form_spectrum(family: MobiusFamily, theta: float) -> float:
    return family.closed_form(theta)
