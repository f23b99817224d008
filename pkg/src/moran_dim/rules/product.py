# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Product of two homogeneous rules with identical ratio sequences.

Level k of the product has n_k(left) * n_k(right) children, all with the
common ratio c_k. This is the level-square covering of E x F.

Example config:
    rule:
      type: product
      left: {type: block_schedule, boundary: factorial_square, blocks: [{n: 3, c: 0.25}, {n: 2, c: 0.25}]}
      right: {type: block_schedule, boundary: factorial_square, blocks: [{n: 2, c: 0.25}, {n: 3, c: 0.25}]}
"""

import builtins
from typing import Annotated, ClassVar, Literal

import numpy as np
from marshmallow import Schema, ValidationError
from marshmallow_dataclass import dataclass

from moran_dim.core.errors import UnsupportedCombination
from moran_dim.core.ratios import RatioVector
from moran_dim.rules.base import LevelArrays, LevelRule, LevelRuleField, register_rule

# Relative tolerance when comparing the two factors' log ratios
RATIO_RTOL = 1e-12


@register_rule("product")
@dataclass(frozen=True)
class ProductRule:
    """Homogeneous product rule n'_k = n_k(left) * n_k(right), c'_k = c_k."""

    type: Literal["product"] = "product"
    left: Annotated[LevelRule, LevelRuleField()] | None = None
    right: Annotated[LevelRule, LevelRuleField()] | None = None

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        for name in ("left", "right"):
            factor = getattr(self, name)
            if factor is None:
                raise ValidationError("product rule needs both factors", field_name=name)
            if not factor.homogeneous:
                raise ValidationError(f"product factor {factor.describe()} is not homogeneous", field_name=name)

    @property
    def factors(self) -> tuple[LevelRule, LevelRule]:
        assert self.left is not None and self.right is not None
        return self.left, self.right

    @property
    def homogeneous(self) -> bool:
        return True

    @property
    def max_level(self) -> int | None:
        limits = [f.max_level for f in self.factors if f.max_level is not None]
        return min(limits) if limits else None

    def level(self, k: int) -> RatioVector:
        left, right = (f.level(k) for f in self.factors)
        if not np.isclose(left.log_max, right.log_max, rtol=RATIO_RTOL, atol=0.0):
            raise UnsupportedCombination(f"Product factors have different ratios at level {k}")
        return RatioVector.uniform_log(left.n * right.n, left.log_max)

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        left, right = (f.level_arrays(k_lo, k_hi) for f in self.factors)
        mismatch = ~np.isclose(left.log_c, right.log_c, rtol=RATIO_RTOL, atol=0.0)
        if mismatch.any():
            k = k_lo + int(np.argmax(mismatch))
            raise UnsupportedCombination(f"Product factors have different ratios at level {k}")
        return LevelArrays(k_lo=k_lo, log_n=left.log_n + right.log_n, log_max=left.log_c, log_min=left.log_c)

    def describe(self) -> str:
        left, right = self.factors
        return f"product({left.describe()} x {right.describe()})"
