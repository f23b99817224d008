# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Block-schedule rules.

Levels are split into consecutive blocks (B_{i-1}, B_i] by a boundary
function, with B_0 = 0. Block i uses blocks[(i - 1) % len(blocks)].

Boundary functions:
- factorial_square: B_m = (m!)^2, i.e. 1, 4, 36, 576, ...
- geometric_sum: B_j = L + L^2 + ... + L^j (param = L)
- linear: B_j = j * width (param = width)

Example config:
    rule:
      type: block_schedule
      boundary: factorial_square
      blocks:
        - {n: 3, c: 0.25}
        - {n: 2, c: 0.25}
"""

import builtins
import math
from abc import ABC, abstractmethod
from dataclasses import field
from functools import cached_property
from typing import ClassVar, Literal

import numpy as np
from marshmallow import Schema, ValidationError
from marshmallow_dataclass import dataclass

from moran_dim.core.ratios import MAX_LEVEL, RatioVector
from moran_dim.rules.base import LevelArrays, register_rule


class BoundaryFunction(ABC):
    """Maps levels to 1-based block indices."""

    def __init__(self, param: int):
        self.param = param

    @abstractmethod
    def block_index(self, k: np.ndarray) -> np.ndarray:
        """Block i with B_{i-1} < k <= B_i, for every k in the array."""
        ...

    @abstractmethod
    def bound(self, i: int) -> int:
        """Upper boundary B_i of block i (B_0 = 0)."""
        ...


class _SequenceBoundary(BoundaryFunction):
    """Boundaries listed up to the first one past MAX_LEVEL."""

    @abstractmethod
    def _next(self, i: int, previous: int) -> int: ...

    @cached_property
    def bounds(self) -> np.ndarray:
        values: list[int] = []
        previous = 0
        i = 1
        while previous <= MAX_LEVEL:
            current = self._next(i, previous)
            if current <= previous:
                raise ValidationError(f"Block boundaries must be strictly increasing, got {previous} then {current}")
            values.append(current)
            previous = current
            i += 1
        return np.array(values, dtype=np.int64)

    def block_index(self, k: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.bounds, k, side="left") + 1

    def bound(self, i: int) -> int:
        return 0 if i == 0 else int(self.bounds[i - 1])


class FactorialSquare(_SequenceBoundary):
    def _next(self, i: int, previous: int) -> int:
        return math.factorial(i) ** 2


class GeometricSum(_SequenceBoundary):
    def _next(self, i: int, previous: int) -> int:
        return previous + self.param**i


class Linear(BoundaryFunction):
    def block_index(self, k: np.ndarray) -> np.ndarray:
        return (np.asarray(k, dtype=np.int64) + self.param - 1) // self.param

    def bound(self, i: int) -> int:
        return i * self.param


_BOUNDARIES: dict[str, builtins.type[BoundaryFunction]] = {
    "factorial_square": FactorialSquare,
    "geometric_sum": GeometricSum,
    "linear": Linear,
}


def get_boundary(name: str, param: int) -> BoundaryFunction:
    """Instantiate a boundary function by name.

    Raises:
        ValueError: If the boundary function is not known
    """
    if name not in _BOUNDARIES:
        available = ", ".join(sorted(_BOUNDARIES))
        raise ValueError(f"Unknown boundary function: {name}. Available: {available}")
    return _BOUNDARIES[name](param)


def list_boundaries() -> list[str]:
    return sorted(_BOUNDARIES)


@dataclass(frozen=True)
class BlockLevel:
    """Child count and common ratio used on every level of a block."""

    n: int
    c: float

    Schema: ClassVar[builtins.type[Schema]] = Schema


@register_rule("block_schedule")
@dataclass(frozen=True)
class BlockScheduleRule:
    """Homogeneous rule whose (n, c) is constant on each block of levels."""

    type: Literal["block_schedule"] = "block_schedule"
    boundary: str = "factorial_square"
    blocks: list[BlockLevel] = field(default_factory=list)
    param: int = 2

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if self.boundary not in _BOUNDARIES:
            raise ValidationError(
                f"Unknown boundary function: {self.boundary}. Available: {', '.join(list_boundaries())}",
                field_name="boundary",
            )
        if not self.blocks:
            raise ValidationError("block_schedule needs at least one block", field_name="blocks")
        if self.param < 1:
            raise ValidationError(f"param must be >= 1, got {self.param}", field_name="param")
        if self.boundary == "geometric_sum" and self.param < 2:
            raise ValidationError("geometric_sum needs L >= 2", field_name="param")

    @cached_property
    def boundaries(self) -> BoundaryFunction:
        return get_boundary(self.boundary, self.param)

    @cached_property
    def _block_logs(self) -> tuple[np.ndarray, np.ndarray]:
        log_n = np.array([math.log(b.n) if b.n > 0 else -math.inf for b in self.blocks])
        log_c = np.array([math.log(b.c) if b.c > 0 else -math.inf for b in self.blocks])
        return log_n, log_c

    @property
    def homogeneous(self) -> bool:
        return True

    @property
    def max_level(self) -> int | None:
        return None

    def block_of(self, k: int) -> int:
        """1-based block index holding level k."""
        return int(self.boundaries.block_index(np.array([k]))[0])

    def level(self, k: int) -> RatioVector:
        block = self.blocks[(self.block_of(k) - 1) % len(self.blocks)]
        return RatioVector.uniform(block.n, block.c)

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        k = np.arange(k_lo, k_hi + 1, dtype=np.int64)
        position = (self.boundaries.block_index(k) - 1) % len(self.blocks)
        log_n, log_c = self._block_logs
        log_c_k = log_c[position]
        return LevelArrays(k_lo=k_lo, log_n=log_n[position], log_max=log_c_k, log_min=log_c_k)

    def describe(self) -> str:
        pattern = ", ".join(f"({b.n}, {b.c:g})" for b in self.blocks)
        suffix = "" if self.boundary == "factorial_square" else f"(param={self.param})"
        return f"block_schedule({self.boundary}{suffix}: {pattern})"
