# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Shared specs and helpers for the moran-dim tests."""

import math

import pytest

from moran_dim.constructions import preset
from moran_dim.constructions.mobius import MobiusFamily
from moran_dim.core.spec import MoranSpec
from moran_dim.rules.explicit import ExplicitRule

CANTOR_DIM = math.log(2) / math.log(3)
LOG2, LOG3, LOG4 = math.log(2), math.log(3), math.log(4)


def factorial_blocks_s_k(k: int, first: int = 3, second: int = 2) -> float:
    """s_k of the factorial-square schedule at ratio 1/4, counted level by level."""
    bounds = [0]
    i = 1
    while bounds[-1] < k:
        bounds.append(math.factorial(i) ** 2)
        i += 1
    total = 0.0
    for block, (lo, hi) in enumerate(zip(bounds, bounds[1:]), start=1):
        levels = min(hi, k) - lo
        total += levels * math.log(first if block % 2 == 1 else second)
    return total / (k * LOG4)


@pytest.fixture
def cantor() -> MoranSpec:
    return preset("cantor")


@pytest.fixture
def power_growth() -> MoranSpec:
    return preset("exm4_3")


@pytest.fixture
def factorial_blocks() -> MoranSpec:
    return preset("exm4_1_E")


@pytest.fixture
def mobius_family() -> MobiusFamily:
    return MobiusFamily(L=2, M=3, N=2, Q=4)


@pytest.fixture
def two_ratio_spec() -> MoranSpec:
    """Three levels, the first with unequal ratios."""
    rule = ExplicitRule(levels=[[0.5, 0.25], [1 / 3, 1 / 3], [0.25, 0.25, 0.25]], tail="none")
    return MoranSpec(ambient_dim=1, rule=rule, name="two-ratio")
