# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Independent verification path for the cut-set DP.

- enumeration: exhaustive admissible cut sets, brute-force roots, the sum inequality check
- random_specs: seeded random instances
- verification: oracle-vs-DP sweeps
"""

from .enumeration import (
    EnumerationBudget,
    brute_force_s_delta_theta,
    count_admissible_cut_sets,
    cut_set_roots,
    enumerate_admissible_cut_sets,
    lemma_sum_check,
)
from .random_specs import RANDOM_RATIOS, RandomInstance, generate_instances, random_band, random_spec
from .verification import InstanceOutcome, VerificationSummary, verify_instance, verify_random_instances

__all__ = [
    "EnumerationBudget",
    "brute_force_s_delta_theta",
    "count_admissible_cut_sets",
    "cut_set_roots",
    "enumerate_admissible_cut_sets",
    "lemma_sum_check",
    "RANDOM_RATIOS",
    "RandomInstance",
    "generate_instances",
    "random_band",
    "random_spec",
    "InstanceOutcome",
    "VerificationSummary",
    "verify_instance",
    "verify_random_instances",
]
