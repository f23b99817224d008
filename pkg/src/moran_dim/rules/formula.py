# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Homogeneous rules given by a named per-level formula.

Formulas:
- constant(n, c): n_k = n, c_k = c
- power_growth(n_base, c_base, c_shift): n_k = n_base^k, c_k = c_base^-(k + c_shift)
- doubly_exponential(n, base): n_k = n, c_k = base^-(base^k), defined for k <= max_level

Example config:
    rule:
      type: formula
      formula: power_growth
      params: {n_base: 2, c_base: 3, c_shift: 1}
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

from moran_dim.core.errors import DomainError
from moran_dim.core.ratios import RatioVector
from moran_dim.rules.base import LevelArrays, register_rule


class LevelFormula(ABC):
    """A closed-form (n_k, c_k) law with named float parameters."""

    defaults: ClassVar[dict[str, float]] = {}

    def max_level(self, p: dict[str, float]) -> int | None:
        return None

    @abstractmethod
    def count(self, k: int, p: dict[str, float]) -> int:
        """Exact child count n_k."""
        ...

    @abstractmethod
    def log_count(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray: ...

    @abstractmethod
    def log_ratio(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray: ...


_FORMULAS: dict[str, LevelFormula] = {}


def register_formula(name: str):
    """Decorator to register a level formula under a name."""

    def decorator(cls: builtins.type[LevelFormula]) -> builtins.type[LevelFormula]:
        _FORMULAS[name] = cls()
        return cls

    return decorator


def get_formula(name: str) -> LevelFormula:
    """Get a registered formula.

    Raises:
        ValueError: If no formula has that name
    """
    if name not in _FORMULAS:
        available = ", ".join(sorted(_FORMULAS))
        raise ValueError(f"Unknown formula: {name}. Available: {available}")
    return _FORMULAS[name]


def list_formulas() -> list[str]:
    return sorted(_FORMULAS)


def _integer(p: dict[str, float], name: str) -> int:
    value = p[name]
    if value != int(value):
        raise DomainError(f"Formula parameter {name} must be an integer, got {value}")
    return int(value)


@register_formula("constant")
class ConstantFormula(LevelFormula):
    defaults = {"n": 2.0, "c": 1.0 / 3.0}

    def count(self, k: int, p: dict[str, float]) -> int:
        return _integer(p, "n")

    def log_count(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return np.full(k.shape, math.log(_integer(p, "n")))

    def log_ratio(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return np.full(k.shape, math.log(p["c"]) if p["c"] > 0 else -math.inf)


@register_formula("power_growth")
class PowerGrowthFormula(LevelFormula):
    defaults = {"n_base": 2.0, "c_base": 3.0, "c_shift": 1.0}

    def count(self, k: int, p: dict[str, float]) -> int:
        # Exact n_base^k; only built when a caller asks for the level vector
        return _integer(p, "n_base") ** k

    def log_count(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return k * math.log(_integer(p, "n_base"))

    def log_ratio(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return -(k + p["c_shift"]) * math.log(p["c_base"])


@register_formula("doubly_exponential")
class DoublyExponentialFormula(LevelFormula):
    defaults = {"n": 2.0, "base": 2.0, "max_level": 1000.0}

    def max_level(self, p: dict[str, float]) -> int | None:
        return _integer(p, "max_level")

    def count(self, k: int, p: dict[str, float]) -> int:
        return _integer(p, "n")

    def log_count(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return np.full(k.shape, math.log(_integer(p, "n")))

    def log_ratio(self, k: np.ndarray, p: dict[str, float]) -> np.ndarray:
        return -np.power(p["base"], k.astype(float)) * math.log(p["base"])


@register_rule("formula")
@dataclass(frozen=True)
class FormulaRule:
    """Homogeneous rule evaluated from a registered formula."""

    type: Literal["formula"] = "formula"
    formula: str = "constant"
    params: dict[str, float] = field(default_factory=dict)

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if self.formula not in _FORMULAS:
            raise ValidationError(
                f"Unknown formula: {self.formula}. Available: {', '.join(list_formulas())}", field_name="formula"
            )
        unknown = set(self.params) - set(_FORMULAS[self.formula].defaults)
        if unknown:
            raise ValidationError(
                f"Unknown parameters for {self.formula}: {', '.join(sorted(unknown))}", field_name="params"
            )

    @cached_property
    def resolved(self) -> dict[str, float]:
        """Formula defaults overlaid with the configured params."""
        return {**_FORMULAS[self.formula].defaults, **self.params}

    @property
    def homogeneous(self) -> bool:
        return True

    @property
    def max_level(self) -> int | None:
        return _FORMULAS[self.formula].max_level(self.resolved)

    def _check_range(self, k_hi: int) -> None:
        limit = self.max_level
        if limit is not None and k_hi > limit:
            raise DomainError(f"Formula {self.formula} is defined up to level {limit}; level {k_hi} requested")

    def level(self, k: int) -> RatioVector:
        self._check_range(k)
        formula = _FORMULAS[self.formula]
        log_c = float(formula.log_ratio(np.array([k]), self.resolved)[0])
        return RatioVector.uniform_log(formula.count(k, self.resolved), log_c)

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        self._check_range(k_hi)
        formula = _FORMULAS[self.formula]
        k = np.arange(k_lo, k_hi + 1, dtype=np.int64)
        log_c = np.asarray(formula.log_ratio(k, self.resolved), dtype=float)
        log_n = np.asarray(formula.log_count(k, self.resolved), dtype=float)
        return LevelArrays(k_lo=k_lo, log_n=log_n, log_max=log_c, log_min=log_c)

    def describe(self) -> str:
        args = ", ".join(f"{key}={value:g}" for key, value in sorted(self.params.items()))
        return f"formula({self.formula}{': ' + args if args else ''})"
