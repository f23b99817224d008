# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Builders from library results to contract payloads."""

from moran_dim.constructions.mobius import MobiusFamily
from moran_dim.contract import (
    NOT_A_DIMENSION_CLAIM,
    AssouadStepPayload,
    ClassicPayload,
    ClosedFormRowPayload,
    ConstructPayload,
    ConvergenceLabel,
    GapPayload,
    HypothesisPayload,
    SpectrumPayload,
    SpectrumRowPayload,
    ValidationPayload,
    VerifyInstancePayload,
    VerifyPayload,
)
from moran_dim.core.spec import MoranSpec, ValidationReport
from moran_dim.dims.classic import ClassicEstimates, GapReport
from moran_dim.dims.intermediate import HypothesisReport, SpectrumResult
from moran_dim.oracle.verification import VerificationSummary

# Violations listed in a validation payload; the count covers the rest
MAX_LISTED_VIOLATIONS = 20


def validation_payload(report: ValidationReport) -> ValidationPayload:
    return ValidationPayload(
        depth=report.depth,
        homogeneous=report.homogeneous,
        valid=report.valid,
        violation_count=report.violation_count,
        violations=[str(v) for v in report.violations[:MAX_LISTED_VIOLATIONS]],
        c_star=report.c_star,
        c_star_bounded=report.c_star_bounded,
        c_star_label=report.c_star_label,
    )


def gap_payload(gap: GapReport | None) -> GapPayload | None:
    if gap is None:
        return None
    return GapPayload(
        window=gap.window,
        max_gap=gap.max_gap,
        max_bound=gap.max_bound,
        worst_level=gap.worst_level,
        holds=gap.holds,
    )


def hypothesis_payload(report: HypothesisReport | None) -> HypothesisPayload | None:
    if report is None:
        return None
    return HypothesisPayload(
        window=report.window,
        final_ratio=report.final_ratio,
        order=report.order,
        non_increasing=report.non_increasing,
        label=report.label,
    )


def spectrum_payload(
    spec: MoranSpec, result: SpectrumResult, hypothesis: HypothesisReport | None = None
) -> SpectrumPayload:
    w1, w2 = result.windows
    return SpectrumPayload(
        spec=spec.describe(),
        ambient_dim=result.ambient_dim,
        depth=result.depth,
        path=result.path,
        window=(w1.lo, w1.hi),
        window2=(w2.lo, w2.hi),
        tail_fraction=result.policy.tail_fraction,
        threshold=result.policy.threshold,
        s_star_est=result.s_star_est,
        s_upperstar_est=result.s_upperstar_est,
        converged=sum(r.converged for r in result.rows),
        rows=[
            SpectrumRowPayload(
                theta=r.theta,
                upper=r.upper,
                lower=r.lower,
                upper_window2=r.upper_window2,
                lower_window2=r.lower_window2,
                label=r.label,
            )
            for r in result.rows
        ],
        gap=gap_payload(result.gap),
        hypothesis=hypothesis_payload(hypothesis),
        notes=list(result.notes),
    )


def verify_payload(summary: VerificationSummary) -> VerifyPayload:
    return VerifyPayload(
        seed=summary.seed,
        instances=len(summary.outcomes),
        matched=summary.matched,
        counts_matched=summary.counts_matched,
        match_tol=summary.match_tol,
        max_difference=summary.max_difference,
        redraws=summary.redraws,
        summary=summary.describe(),
        ok=summary.ok,
        outcomes=[
            VerifyInstancePayload(
                index=o.instance.index,
                depth=o.instance.depth,
                theta=o.instance.band.theta,
                log_delta=o.instance.band.log_delta_cov,
                dp=o.dp,
                oracle=o.oracle,
                difference=o.difference,
                enumerated=o.enumerated,
                counted=o.instance.cut_sets,
                redraws=o.instance.redraws,
                matched=o.matched,
            )
            for o in summary.outcomes
        ],
    )


def construct_payload(
    family: MobiusFamily, thetas: list[float], identity_gap: float, spec_path: str | None = None
) -> ConstructPayload:
    return ConstructPayload(
        L=family.L,
        M=family.M,
        N=family.N,
        Q=family.Q,
        hausdorff=family.hausdorff,
        upper_box=family.upper_box,
        plateau_end=family.plateau_end,
        identity_gap=identity_gap,
        spec_path=spec_path,
        rows=[
            ClosedFormRowPayload(theta=r.theta, value=r.value, exponent_form=r.exponent_form)
            for r in family.table(thetas)
        ],
    )


def classic_payload(
    spec: MoranSpec,
    depth: int,
    estimates: tuple[ClassicEstimates, ClassicEstimates],
    threshold: float,
    validation: ValidationReport,
    hypothesis: HypothesisReport | None = None,
    gap: GapReport | None = None,
) -> ClassicPayload:
    """`dims` payload from window-1 and window-2 estimates."""
    est1, est2 = estimates

    def label(a: float, b: float) -> ConvergenceLabel:
        return ConvergenceLabel.CONVERGED if abs(a - b) <= threshold else ConvergenceLabel.UNCONVERGED

    return ClassicPayload(
        spec=spec.describe(),
        ambient_dim=spec.ambient_dim,
        depth=depth,
        window=est1.window,
        window2=est2.window,
        hausdorff=est1.s_star_est,
        upper_box=est1.s_upperstar_est,
        hausdorff_window2=est2.s_star_est,
        upper_box_window2=est2.s_upperstar_est,
        hausdorff_label=label(est1.s_star_est, est2.s_star_est),
        upper_box_label=label(est1.s_upperstar_est, est2.s_upperstar_est),
        hausdorff_level=est1.argmin_level,
        upper_box_level=est1.argmax_level,
        assouad=est1.assouad_est,
        assouad_profile=[AssouadStepPayload(m=m, value=v) for m, v in est1.s_doublestar_profile],
        assouad_label=None if validation.c_star_bounded else NOT_A_DIMENSION_CLAIM,
        validation=validation_payload(validation),
        hypothesis=hypothesis_payload(hypothesis),
        gap=gap_payload(gap),
    )
