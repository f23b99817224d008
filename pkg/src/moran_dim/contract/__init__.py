# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Report contract for moran-dim.

This package defines the Pydantic payloads and enums for every JSON document
the CLI writes. It has zero internal imports outside the package; it only
depends on pydantic.

Usage:
    from moran_dim.contract import SpectrumPayload, SpectrumRowPayload, ConvergenceLabel
"""

from moran_dim.contract.enums import Command, ConvergenceLabel, HypothesisLabel, SpectrumPath
from moran_dim.contract.reports import (
    NOT_A_DIMENSION_CLAIM,
    AssouadStepPayload,
    ClassicPayload,
    ClosedFormRowPayload,
    ConstructPayload,
    GapPayload,
    HypothesisPayload,
    SpectrumPayload,
    SpectrumRowPayload,
    ValidationPayload,
    VerifyInstancePayload,
    VerifyPayload,
)

__all__ = [
    # Enums
    "Command",
    "ConvergenceLabel",
    "HypothesisLabel",
    "SpectrumPath",
    # Payloads
    "NOT_A_DIMENSION_CLAIM",
    "AssouadStepPayload",
    "ClassicPayload",
    "ClosedFormRowPayload",
    "ConstructPayload",
    "GapPayload",
    "HypothesisPayload",
    "SpectrumPayload",
    "SpectrumRowPayload",
    "ValidationPayload",
    "VerifyInstancePayload",
    "VerifyPayload",
]
