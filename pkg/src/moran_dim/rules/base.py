# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Base protocol, registry and marshmallow field for level rules.

A level rule produces the child count n_k and the ratio vector φ_k for every
level k >= 1. Rules are frozen dataclasses that double as config schemas, the
same way backend configs are both config and implementation.
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any, Protocol

import numpy as np
from marshmallow import ValidationError, fields

from moran_dim.core.ratios import RatioVector

# Levels evaluated per vectorized call; bounds peak memory on deep sweeps
CHUNK = 1 << 22


class RuleType(str, Enum):
    """Supported level rule types."""

    EXPLICIT = "explicit"
    PERIODIC = "periodic"
    BLOCK_SCHEDULE = "block_schedule"
    FORMULA = "formula"
    PRODUCT = "product"


@dataclass(frozen=True)
class LevelArrays:
    """Per-level log data for a contiguous range of levels.

    Attributes:
        k_lo: First level in the range
        log_n: log n_k for each level
        log_max: log of the largest ratio at each level
        log_min: log of the smallest ratio at each level
    """

    k_lo: int
    log_n: np.ndarray
    log_max: np.ndarray
    log_min: np.ndarray

    @property
    def k_hi(self) -> int:
        return self.k_lo + len(self.log_n) - 1

    @property
    def log_c(self) -> np.ndarray:
        """Common log ratio of a homogeneous range."""
        return self.log_max


class LevelRule(Protocol):
    """Protocol that all level rules implement."""

    @property
    def type(self) -> str:
        """Rule type identifier."""
        ...

    @property
    def homogeneous(self) -> bool:
        """True iff every level's ratios are all equal."""
        ...

    @property
    def max_level(self) -> int | None:
        """Last level the rule defines, or None when unbounded."""
        ...

    def level(self, k: int) -> RatioVector:
        """Ratio vector of level k (k >= 1, already range-checked)."""
        ...

    def level_arrays(self, k_lo: int, k_hi: int) -> LevelArrays:
        """Vectorized log data for levels k_lo..k_hi inclusive."""
        ...

    def describe(self) -> str:
        """Short human-readable summary."""
        ...


def iter_level_arrays(rule: LevelRule, k_lo: int, k_hi: int, chunk: int = CHUNK) -> Iterator[LevelArrays]:
    """Yield LevelArrays for k_lo..k_hi in chunks of at most `chunk` levels."""
    start = k_lo
    while start <= k_hi:
        stop = min(start + chunk - 1, k_hi)
        yield rule.level_arrays(start, stop)
        start = stop + 1


# Registry of rule classes, keyed by the "type" discriminator
_RULES: dict[str, type] = {}


def register_rule(name: str):
    """Decorator to register a level rule class.

    Usage:
        @register_rule("explicit")
        @dataclass(frozen=True)
        class ExplicitRule:
            ...
    """

    def decorator(cls: type) -> type:
        _RULES[name] = cls
        return cls

    return decorator


def get_rule_class(rule_type: str) -> type:
    """Get the rule class registered for a type name.

    Raises:
        ValueError: If the rule type is not registered
    """
    if rule_type not in _RULES:
        available = ", ".join(sorted(_RULES.keys()))
        raise ValueError(f"Unknown rule type: {rule_type}. Available: {available}")
    return _RULES[rule_type]


def list_rules() -> list[str]:
    """List all registered rule types."""
    return sorted(_RULES.keys())


def dump_rule(rule: LevelRule) -> dict[str, Any]:
    """Serialize a rule to its config document form."""
    return type(rule).Schema().dump(rule)  # type: ignore[attr-defined]


class LevelRuleField(fields.Field):
    """Marshmallow field for polymorphic rule deserialization based on type."""

    def _deserialize(
        self,
        value: Any,
        attr: str | None,
        data: Mapping[str, Any] | None,
        **kwargs,
    ) -> LevelRule:
        if isinstance(value, tuple(_RULES.values())):
            return value
        if not isinstance(value, dict):
            raise ValidationError(f"Expected dict for rule, got {type(value).__name__}")
        rule_type = value.get("type")
        if rule_type is None:
            raise ValidationError(f"Rule is missing 'type'. Supported types: {', '.join(list_rules())}")
        try:
            cls = get_rule_class(rule_type)
        except ValueError as e:
            raise ValidationError(str(e)) from e
        return cls.Schema().load(value)  # type: ignore[attr-defined]

    def _serialize(self, value: Any | None, attr: str | None, obj: Any, **kwargs) -> Any:
        if value is None:
            return None
        return dump_rule(value)
