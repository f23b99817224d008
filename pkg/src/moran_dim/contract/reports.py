# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""JSON report payloads, one per moran-dim command."""

from pydantic import BaseModel, Field

from moran_dim.contract.enums import Command, ConvergenceLabel, HypothesisLabel, SpectrumPath

# Assouad label used when the window diagnostic suggests c_* -> 0
NOT_A_DIMENSION_CLAIM = "not a dimension claim"


class ValidationPayload(BaseModel):
    """Moran structure check over levels 1..depth."""

    depth: int
    homogeneous: bool
    valid: bool
    violation_count: int = 0
    violations: list[str] = Field(default_factory=list, description="First violations, 'k=.., j=..: reason'")
    c_star: float = Field(..., description="Window infimum of all contraction ratios")
    c_star_bounded: bool
    c_star_label: str


class HypothesisPayload(BaseModel):
    """Trend of log c̲_k / log M_k over a window."""

    window: tuple[int, int]
    final_ratio: float
    order: float = Field(..., description="Fitted slope of log ratio against log k")
    non_increasing: bool
    label: HypothesisLabel


class GapPayload(BaseModel):
    """Consecutive-gap diagnostic for homogeneous specs."""

    window: tuple[int, int]
    max_gap: float
    max_bound: float
    worst_level: int
    holds: bool


class AssouadStepPayload(BaseModel):
    m: int
    value: float = Field(..., description="max over the window of s_{k,k+m}")


class ClassicPayload(BaseModel):
    """`dims` report: Hausdorff, box/packing and Assouad estimates."""

    command: Command = Command.DIMS
    spec: str
    ambient_dim: int
    depth: int
    window: tuple[int, int]
    window2: tuple[int, int]
    hausdorff: float = Field(..., description="s_* estimate over window 1")
    upper_box: float = Field(..., description="s^* estimate over window 1, also the packing dimension")
    hausdorff_window2: float
    upper_box_window2: float
    hausdorff_label: ConvergenceLabel
    upper_box_label: ConvergenceLabel
    hausdorff_level: int = Field(..., description="Level attaining the window-1 minimum")
    upper_box_level: int = Field(..., description="Level attaining the window-1 maximum")
    assouad: float | None = None
    assouad_profile: list[AssouadStepPayload] = Field(default_factory=list)
    assouad_label: str | None = None
    validation: ValidationPayload
    hypothesis: HypothesisPayload | None = None
    gap: GapPayload | None = None


class SpectrumRowPayload(BaseModel):
    theta: float
    upper: float
    lower: float
    upper_window2: float
    lower_window2: float
    label: ConvergenceLabel


class SpectrumPayload(BaseModel):
    """`spectrum` report: every CSV row plus run diagnostics."""

    command: Command = Command.SPECTRUM
    spec: str
    ambient_dim: int
    depth: int
    path: SpectrumPath
    window: tuple[int, int]
    window2: tuple[int, int]
    tail_fraction: float
    threshold: float
    s_star_est: tuple[float, float] = Field(..., description="(window 1, window 2) minima of s_k")
    s_upperstar_est: tuple[float, float] = Field(..., description="(window 1, window 2) maxima of s_k")
    converged: int = Field(..., description="Rows whose windows agree (definitional rows included)")
    rows: list[SpectrumRowPayload]
    gap: GapPayload | None = None
    hypothesis: HypothesisPayload | None = None
    notes: list[str] = Field(default_factory=list)


class VerifyInstancePayload(BaseModel):
    index: int
    depth: int
    theta: float
    log_delta: float
    dp: float
    oracle: float
    difference: float
    enumerated: int
    counted: int = Field(..., description="Closed-form admissible cut-set count")
    redraws: int
    matched: bool


class VerifyPayload(BaseModel):
    """`verify` report: oracle-vs-DP comparison."""

    command: Command = Command.VERIFY
    seed: int
    instances: int
    matched: int
    counts_matched: int
    match_tol: float
    max_difference: float
    redraws: int
    summary: str
    ok: bool
    outcomes: list[VerifyInstancePayload] = Field(default_factory=list)


class ClosedFormRowPayload(BaseModel):
    theta: float
    value: float
    exponent_form: float | None = None


class ConstructPayload(BaseModel):
    """`construct mobius` report."""

    command: Command = Command.CONSTRUCT
    L: int
    M: int
    N: int
    Q: int
    hausdorff: float
    upper_box: float
    plateau_end: float = Field(..., description="1/L², below which the spectrum is constant")
    identity_gap: float = Field(..., description="Largest gap between the closed form and the exponent form")
    spec_path: str | None = None
    rows: list[ClosedFormRowPayload]
