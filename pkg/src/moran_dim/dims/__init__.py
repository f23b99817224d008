# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Dimension algorithms.

- roots: bisection for strictly decreasing log-sums
- classic: s_{k,k'}, s_k and the Hausdorff / box / Assouad estimates
- windows: two-window policy and window minima
- cutsets: admissible bands and the cut-set DP
- intermediate: band levels, spectra and the c_* -> 0 diagnostic
"""

from .classic import (
    ClassicEstimates,
    GapReport,
    RunningSums,
    classic_dim_estimates,
    gap_bound_report,
    log_delta,
    pair_roots,
    s_k_homogeneous,
    s_k_values,
    solve_s_kk,
)
from .cutsets import AdmissibleBand, CutSetLattice, min_cutset_sum, s_delta_theta_general
from .intermediate import (
    HypothesisReport,
    SpectrumResult,
    SpectrumRow,
    c_star_zero_hypothesis,
    check_spectrum,
    delta_band,
    l_of_k_theta,
    s_delta_theta_homog,
    spectrum,
)
from .roots import DEFAULT_BRACKET, RootBracket, bisect_many, solve_decreasing
from .windows import (
    BlockedRangeMin,
    MonotoneWindowMin,
    Window,
    WindowPolicy,
    blocked_window_min,
    sliding_window_min,
)

__all__ = [
    # Roots
    "DEFAULT_BRACKET",
    "RootBracket",
    "bisect_many",
    "solve_decreasing",
    # Classic dimensions
    "ClassicEstimates",
    "GapReport",
    "RunningSums",
    "classic_dim_estimates",
    "gap_bound_report",
    "log_delta",
    "pair_roots",
    "s_k_homogeneous",
    "s_k_values",
    "solve_s_kk",
    # Windows
    "BlockedRangeMin",
    "MonotoneWindowMin",
    "Window",
    "WindowPolicy",
    "blocked_window_min",
    "sliding_window_min",
    # Cut sets
    "AdmissibleBand",
    "CutSetLattice",
    "min_cutset_sum",
    "s_delta_theta_general",
    # Spectra
    "HypothesisReport",
    "SpectrumResult",
    "SpectrumRow",
    "c_star_zero_hypothesis",
    "check_spectrum",
    "delta_band",
    "l_of_k_theta",
    "s_delta_theta_homog",
    "spectrum",
]
