# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""θ-grid parsing: "lo:hi:step" strings or explicit lists."""

import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from marshmallow import ValidationError, fields

# Grid values are rounded to this many decimals so "0:1:0.05" gives 0.15, not 0.15000000000000002
GRID_DECIMALS = 12


@dataclass(frozen=True)
class ThetaGrid:
    """Strictly increasing θ values in [0, 1]."""

    values: tuple[float, ...]
    source: str | None = None

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("θ-grid is empty")
        for theta in self.values:
            if not (0.0 <= theta <= 1.0) or math.isnan(theta):
                raise ValueError(f"θ value {theta} is outside [0, 1]")
        for a, b in zip(self.values, self.values[1:], strict=False):
            if not b > a:
                raise ValueError(f"θ-grid must be strictly increasing, got {a} then {b}")

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return self.source or ",".join(format(t, "g") for t in self.values)


def parse_theta_grid(spec: str | Sequence[float]) -> ThetaGrid:
    """Parse "lo:hi:step" (both endpoints included) or an explicit list.

    Raises:
        ValueError: On malformed input or values outside [0, 1]
    """
    if isinstance(spec, str):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"θ-grid must look like lo:hi:step, got {spec!r}")
        try:
            lo, hi, step = (float(p) for p in parts)
        except ValueError as e:
            raise ValueError(f"θ-grid {spec!r} has a non-numeric part") from e
        if step <= 0:
            raise ValueError(f"θ-grid step must be positive, got {step}")
        if hi < lo:
            raise ValueError(f"θ-grid upper end {hi} is below lower end {lo}")
        count = math.floor((hi - lo) / step + 1e-9) + 1
        values = tuple(round(lo + i * step, GRID_DECIMALS) for i in range(count))
        return ThetaGrid(values=values, source=spec)
    return ThetaGrid(values=tuple(float(t) for t in spec))


class ThetaGridField(fields.Field):
    """Marshmallow field accepting a θ-grid string or list."""

    def _deserialize(self, value: Any, attr: str | None, data: Mapping[str, Any] | None, **kwargs) -> ThetaGrid:
        if isinstance(value, ThetaGrid):
            return value
        if not isinstance(value, str | list | tuple):
            raise ValidationError(f"Expected 'lo:hi:step' string or list for thetas, got {type(value).__name__}")
        try:
            return parse_theta_grid(value)
        except (TypeError, ValueError) as e:
            raise ValidationError(str(e)) from e

    def _serialize(self, value: Any | None, attr: str | None, obj: Any, **kwargs) -> Any:
        if value is None:
            return None
        return value.source if value.source else list(value.values)
