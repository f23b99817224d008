# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Rules given by listed ratio vectors.

Example config:
    rule:
      type: explicit
      levels: [[0.5, 0.25], [0.5, 0.5]]
      tail: none

    rule:
      type: periodic
      period: [[0.3333333333333333, 0.3333333333333333]]
"""

import builtins
from dataclasses import field
from functools import cached_property
from typing import ClassVar, Literal

import numpy as np
from marshmallow import Schema, ValidationError
from marshmallow_dataclass import dataclass

from moran_dim.core.errors import DomainError
from moran_dim.core.ratios import RatioVector
from moran_dim.rules.base import LevelArrays, register_rule

TailPolicy = Literal["none", "repeat_last", "cycle"]


def _vectors(levels: list[list[float]]) -> tuple[RatioVector, ...]:
    return tuple(RatioVector.from_ratios(ratios) for ratios in levels)


def _table_arrays(vectors: tuple[RatioVector, ...], positions: np.ndarray, k_lo: int) -> LevelArrays:
    log_n = np.array([v.log_n for v in vectors])
    log_max = np.array([v.log_max for v in vectors])
    log_min = np.array([v.log_min for v in vectors])
    return LevelArrays(k_lo=k_lo, log_n=log_n[positions], log_max=log_max[positions], log_min=log_min[positions])


@register_rule("explicit")
@dataclass(frozen=True)
class ExplicitRule:
    """Finite list of ratio vectors for levels 1, 2, ... with a tail policy.

    tail:
        none: levels past the list are a domain error
        repeat_last: the last vector repeats forever
        cycle: the list repeats from level 1
    """

    type: Literal["explicit"] = "explicit"
    levels: list[list[float]] = field(default_factory=list)
    tail: TailPolicy = "none"

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValidationError("explicit rule needs at least one level", field_name="levels")
        if any(not ratios for ratios in self.levels):
            raise ValidationError("every level needs at least one ratio", field_name="levels")

    @cached_property
    def vectors(self) -> tuple[RatioVector, ...]:
        return _vectors(self.levels)

    @property
    def homogeneous(self) -> bool:
        return all(v.is_uniform for v in self.vectors)

    @property
    def max_level(self) -> int | None:
        return len(self.levels) if self.tail == "none" else None

    def _position(self, index: int) -> int:
        count = len(self.vectors)
        if index < count:
            return index
        if self.tail == "repeat_last":
            return count - 1
        if self.tail == "cycle":
            return index % count
        raise DomainError(f"Explicit rule defines {count} levels and has no tail policy; level {index + 1} requested")

    def level(self, k: int) -> RatioVector:
        return self.vectors[self._position(k - 1)]

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        count = len(self.vectors)
        index = np.arange(k_lo - 1, k_hi, dtype=np.int64)
        if self.tail == "none":
            if k_hi > count:
                raise DomainError(
                    f"Explicit rule defines {count} levels and has no tail policy; level {k_hi} requested"
                )
            positions = index
        elif self.tail == "repeat_last":
            positions = np.minimum(index, count - 1)
        else:
            positions = index % count
        return _table_arrays(self.vectors, positions, k_lo)

    def describe(self) -> str:
        return f"explicit({len(self.levels)} levels, tail={self.tail})"


@register_rule("periodic")
@dataclass(frozen=True)
class PeriodicRule:
    """Ratio vectors repeating with a fixed period from level 1."""

    type: Literal["periodic"] = "periodic"
    period: list[list[float]] = field(default_factory=list)

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if not self.period:
            raise ValidationError("periodic rule needs a non-empty period", field_name="period")

    @cached_property
    def vectors(self) -> tuple[RatioVector, ...]:
        return _vectors(self.period)

    @property
    def homogeneous(self) -> bool:
        return all(v.is_uniform for v in self.vectors)

    @property
    def max_level(self) -> int | None:
        return None

    def level(self, k: int) -> RatioVector:
        return self.vectors[(k - 1) % len(self.vectors)]

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        positions = np.arange(k_lo - 1, k_hi, dtype=np.int64) % len(self.vectors)
        return _table_arrays(self.vectors, positions, k_lo)

    def describe(self) -> str:
        return f"periodic(period={len(self.period)})"
