# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Frozen dataclass schema definitions for run configuration.

Uses marshmallow_dataclass for type-safe configuration with validation.
All config classes are frozen (immutable) after creation. Unknown keys are
rejected at every level.

Example:
    {
      "spec": {"preset": "cantor"},
      "command": "spectrum",
      "depth": 10000,
      "thetas": "0:1:0.05",
      "out": {"csv": "cantor.csv"}
    }
"""

import builtins
import logging
from dataclasses import field
from typing import Annotated, ClassVar, Literal

from marshmallow import Schema, ValidationError
from marshmallow_dataclass import dataclass

from moran_dim.core.grid import ThetaGrid, ThetaGridField, parse_theta_grid
from moran_dim.core.ratios import MAX_LEVEL
from moran_dim.rules.base import LevelRule, LevelRuleField

logger = logging.getLogger(__name__)

CommandName = Literal["dims", "spectrum", "verify", "construct"]

# Presets that are Möbius constructions and can feed `construct`
MOBIUS_PRESETS = frozenset({"mobius", "exm4_4"})


# ============================================================================
# Spec sources
# ============================================================================


@dataclass(frozen=True)
class MobiusSource:
    """Integer parameters (L, M, N, Q) of a Möbius construction."""

    L: int = 2
    M: int = 3
    N: int = 2
    Q: int = 4

    Schema: ClassVar[builtins.type[Schema]] = Schema


@dataclass(frozen=True)
class SpecSource:
    """Where the Moran spec comes from. Exactly one source must be set.

    Attributes:
        preset: Name of a registered preset
        params: Keyword parameters for the preset
        rule: Inline level rule, decoded on its "type" key
        file: Path to a spec document (as written by `construct`)
        mobius: Möbius family parameters
    """

    preset: str | None = None
    params: dict[str, float] = field(default_factory=dict)
    rule: Annotated[LevelRule, LevelRuleField()] | None = None
    file: str | None = None
    mobius: MobiusSource | None = None

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        chosen = [name for name in ("preset", "rule", "file", "mobius") if getattr(self, name) is not None]
        if len(chosen) != 1:
            raise ValidationError(
                f"Exactly one of preset, rule, file or mobius must be set, got {chosen or 'none'}"
            )
        if self.params and self.preset is None:
            raise ValidationError("params only apply to presets", field_name="params")

    @property
    def kind(self) -> str:
        for name in ("preset", "rule", "file", "mobius"):
            if getattr(self, name) is not None:
                return name
        raise AssertionError("unreachable: validated in __post_init__")

    @property
    def is_mobius(self) -> bool:
        return self.mobius is not None or self.preset in MOBIUS_PRESETS


@dataclass(frozen=True)
class SpecDocument:
    """Standalone spec file: ambient dimension plus a rule."""

    ambient_dim: int = 1
    rule: Annotated[LevelRule, LevelRuleField()] | None = None
    name: str | None = None

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if self.rule is None:
            raise ValidationError("spec document needs a rule", field_name="rule")
        if self.ambient_dim < 1:
            raise ValidationError(f"ambient_dim must be >= 1, got {self.ambient_dim}", field_name="ambient_dim")


# ============================================================================
# Run parameters
# ============================================================================


@dataclass(frozen=True)
class WindowsConfig:
    """Two-window limsup/liminf policy.

    W1 = [(1 - f) K, K] and W2 = [(1 - f)^2 K, (1 - f) K] for depth K and
    tail_fraction f. An estimate is converged when the windows agree to
    within threshold.
    """

    tail_fraction: float = 0.5
    threshold: float = 5e-3

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if not 0.0 < self.tail_fraction < 1.0:
            raise ValidationError(
                f"tail_fraction must be in (0, 1), got {self.tail_fraction}", field_name="tail_fraction"
            )
        if self.threshold <= 0:
            raise ValidationError(f"threshold must be positive, got {self.threshold}", field_name="threshold")


@dataclass(frozen=True)
class BudgetsConfig:
    """Resource caps. Exceeding any of them is a resource error."""

    dp_nodes: int = 5_000_000
    oracle_nodes: int = 200_000
    oracle_cut_sets: int = 2_000
    max_levels: int = 30_000_000

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        for name in ("dp_nodes", "oracle_nodes", "oracle_cut_sets", "max_levels"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be positive", field_name=name)


@dataclass(frozen=True)
class VerifyConfig:
    """Randomized oracle-vs-DP comparison settings."""

    instances: int = 100
    max_depth: int = 6
    match_tol: float = 1e-9

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if self.instances < 1:
            raise ValidationError("instances must be positive", field_name="instances")
        if not 2 <= self.max_depth <= 12:
            raise ValidationError(f"max_depth must be in [2, 12], got {self.max_depth}", field_name="max_depth")
        if self.match_tol <= 0:
            raise ValidationError("match_tol must be positive", field_name="match_tol")


@dataclass(frozen=True)
class OutputConfig:
    """Output paths. Unset paths are skipped (CSV falls back to stdout)."""

    csv: str | None = None
    svg: str | None = None
    report: str | None = None
    spec: str | None = None

    Schema: ClassVar[builtins.type[Schema]] = Schema


def _default_thetas() -> ThetaGrid:
    return parse_theta_grid("0:1:0.05")


@dataclass(frozen=True)
class RunConfig:
    """Complete configuration of one moran-dim run."""

    spec: SpecSource
    command: CommandName = "spectrum"
    depth: int = 1000
    thetas: Annotated[ThetaGrid, ThetaGridField()] = field(default_factory=_default_thetas)
    ambient_dim: int | None = None
    windows: WindowsConfig = field(default_factory=WindowsConfig)
    budgets: BudgetsConfig = field(default_factory=BudgetsConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    tol: float = 1e-12
    seed: int = 0
    workers: int = 1
    assouad_steps: list[int] = field(default_factory=lambda: [1, 2, 4, 8, 16])
    out: OutputConfig = field(default_factory=OutputConfig)

    Schema: ClassVar[builtins.type[Schema]] = Schema

    def __post_init__(self) -> None:
        if not 1 <= self.depth <= MAX_LEVEL:
            raise ValidationError(f"depth must be in [1, 2^31], got {self.depth}", field_name="depth")
        if self.ambient_dim is not None and self.ambient_dim < 1:
            raise ValidationError(f"ambient_dim must be >= 1, got {self.ambient_dim}", field_name="ambient_dim")
        if self.tol <= 0:
            raise ValidationError(f"tol must be positive, got {self.tol}", field_name="tol")
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}", field_name="workers")
        if not self.assouad_steps or any(m < 1 for m in self.assouad_steps):
            raise ValidationError(
                "assouad_steps must be a non-empty list of positive integers", field_name="assouad_steps"
            )
        if self.command == "construct" and not self.spec.is_mobius:
            raise ValidationError(
                "construct needs a Möbius source (spec.mobius or a Möbius preset)", field_name="spec"
            )
