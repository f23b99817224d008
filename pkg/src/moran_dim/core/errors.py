# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Exception hierarchy for moran-dim.

Each error carries the process exit code the CLI maps it to:
- 1: domain, configuration, unsupported-combination and numeric errors
- 2: resource errors (DP node budget, enumeration caps, level-span guard)
- 3: verification mismatches (oracle vs DP, spectrum invariants)
"""

from dataclasses import dataclass


class MoranDimError(Exception):
    """Base class for all moran-dim errors."""

    exit_code: int = 1


class DomainError(MoranDimError, ValueError):
    """Arguments outside the domain of an operation."""


class ConfigError(DomainError):
    """Run config could not be parsed or failed semantic validation."""


class UnsupportedCombination(DomainError):
    """Operation is not defined for this kind of spec."""


class NumericError(MoranDimError, ArithmeticError):
    """Root finding or another numeric step failed."""


class ResourceError(MoranDimError, RuntimeError):
    """A configured budget would be exceeded."""

    exit_code = 2


class VerificationMismatch(MoranDimError, AssertionError):
    """Two independent computations disagree, or emitted results break an invariant."""

    exit_code = 3


@dataclass(frozen=True)
class Violation:
    """A single Moran structure violation at level k (and child j when it applies)."""

    k: int
    reason: str
    j: int | None = None

    def __str__(self) -> str:
        where = f"k={self.k}" if self.j is None else f"k={self.k}, j={self.j}"
        return f"{where}: {self.reason}"


class SpecValidationError(DomainError):
    """One or more levels violate the Moran structure conditions."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        shown = "; ".join(str(v) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"Invalid Moran spec: {shown}{more}")
