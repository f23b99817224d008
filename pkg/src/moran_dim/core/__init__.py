# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Core modules for moran-dim.

This package contains:
- errors: Exception hierarchy with CLI exit codes
- ratios: RatioVector, the per-level contraction data
- spec: MoranSpec, structure validation, extreme diameters, product specs
- words: Word, CutSet and the cut-set check
- levels: Prefix-sum level tables for homogeneous specs
- grid: θ-grid parsing
- schema: Frozen dataclass run config schemas
- config: Config loading, parsing and CLI overrides

Only errors and ratios are re-exported here; the other modules depend on
moran_dim.rules and are imported directly.
"""

from .errors import (
    ConfigError,
    DomainError,
    MoranDimError,
    NumericError,
    ResourceError,
    SpecValidationError,
    UnsupportedCombination,
    VerificationMismatch,
    Violation,
)
from .ratios import MAX_LEVEL, RatioVector, check_level

__all__ = [
    # Errors
    "MoranDimError",
    "DomainError",
    "ConfigError",
    "UnsupportedCombination",
    "NumericError",
    "ResourceError",
    "VerificationMismatch",
    "SpecValidationError",
    "Violation",
    # Ratios
    "MAX_LEVEL",
    "RatioVector",
    "check_level",
]
