# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Canonical enum definitions for the report contract."""

from enum import Enum


class Command(str, Enum):
    """moran-dim subcommands."""

    DIMS = "dims"
    SPECTRUM = "spectrum"
    VERIFY = "verify"
    CONSTRUCT = "construct"


class ConvergenceLabel(str, Enum):
    """Two-window agreement of an estimate.

    DEFINITIONAL marks θ = 0 rows, which are set to the s_* estimate by
    convention rather than computed from a band.
    """

    CONVERGED = "converged"
    UNCONVERGED = "unconverged"
    DEFINITIONAL = "definitional"


class HypothesisLabel(str, Enum):
    """Status of the log c̲_k / log M_k -> 0 hypothesis over a window."""

    BOUNDED = "bounded"
    CONDITIONAL = "conditional"
    UNSUPPORTED = "unsupported"


class SpectrumPath(str, Enum):
    """How spectrum rows were computed."""

    HOMOGENEOUS = "homogeneous"
    SUBSEQUENCE = "subsequence"
