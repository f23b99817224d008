# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Named Moran specs.

Presets:
- cantor: n = 2, c = 1/3
- exm4_1_E: c = 1/4, n = 3 on ((m!)², ((m+1)!)²] for even m and n = 2 for odd m
- exm4_2_F: exm4_1_E with 2 and 3 swapped
- exm4_2_product: exm4_1_E x exm4_2_F (d = 2, n = 6, c = 1/4)
- exm4_3: n_k = 2^k, c_k = 3^-(k+1)
- exm4_4: Möbius spec from (L, M, N, r) with 1/r = Q an integer
- mobius: Möbius spec from (L, M, N, Q)
- doubly_exponential: n = 2, c_k = 2^-(2^k), defined up to level 1000
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

from moran_dim.constructions.mobius import MobiusFamily, build_mobius_spec
from moran_dim.core.errors import DomainError
from moran_dim.core.spec import MoranSpec, product_spec
from moran_dim.rules.blocks import BlockLevel, BlockScheduleRule
from moran_dim.rules.formula import FormulaRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preset:
    """A registered spec builder and its default parameters."""

    name: str
    build: Callable[..., MoranSpec]
    defaults: dict[str, float] = field(default_factory=dict)
    family: Callable[..., MobiusFamily] | None = None

    @property
    def is_mobius(self) -> bool:
        return self.family is not None

    def resolve(self, params: dict[str, float]) -> dict[str, float]:
        unknown = set(params) - set(self.defaults)
        if unknown:
            accepted = ", ".join(sorted(self.defaults)) or "none"
            raise DomainError(
                f"Unknown parameters for preset {self.name}: {', '.join(sorted(unknown))} (accepted: {accepted})"
            )
        return {**self.defaults, **params}

    def spec(self, **params: float) -> MoranSpec:
        return self.build(**self.resolve(params))

    def mobius(self, **params: float) -> MobiusFamily:
        if self.family is None:
            raise DomainError(f"Preset {self.name} is not a Möbius construction")
        return self.family(**self.resolve(params))


# Registry of presets
_PRESETS: dict[str, Preset] = {}


def register_preset(
    name: str,
    defaults: dict[str, float] | None = None,
    family: Callable[..., MobiusFamily] | None = None,
):
    """Decorator to register a spec builder.

    Usage:
        @register_preset("cantor")
        def cantor() -> MoranSpec:
            ...
    """

    def decorator(build: Callable[..., MoranSpec]) -> Callable[..., MoranSpec]:
        _PRESETS[name] = Preset(name=name, build=build, defaults=dict(defaults or {}), family=family)
        return build

    return decorator


def get_preset(name: str) -> Preset:
    """Look up a preset by name.

    Raises:
        ValueError: If the preset is not registered
    """
    if name not in _PRESETS:
        available = ", ".join(sorted(_PRESETS))
        raise ValueError(f"Unknown preset: {name}. Available: {available}")
    return _PRESETS[name]


def list_presets() -> list[str]:
    return sorted(_PRESETS)


def preset(name: str, **params: float) -> MoranSpec:
    """Build a preset spec.

    Raises:
        ValueError: If the preset is not registered
        DomainError: On unknown or invalid parameters
    """
    return get_preset(name).spec(**params)


def _int(name: str, value: float) -> int:
    if int(value) != value:
        raise DomainError(f"Parameter {name} must be an integer, got {value}")
    return int(value)


@register_preset("cantor")
def cantor() -> MoranSpec:
    return MoranSpec(ambient_dim=1, rule=FormulaRule(formula="constant", params={"n": 2, "c": 1 / 3}), name="cantor")


def _factorial_blocks(first: int, second: int) -> BlockScheduleRule:
    return BlockScheduleRule(
        boundary="factorial_square",
        blocks=[BlockLevel(n=first, c=0.25), BlockLevel(n=second, c=0.25)],
    )


@register_preset("exm4_1_E")
def example_e() -> MoranSpec:
    return MoranSpec(ambient_dim=1, rule=_factorial_blocks(3, 2), name="exm4_1_E")


@register_preset("exm4_2_F")
def example_f() -> MoranSpec:
    return MoranSpec(ambient_dim=1, rule=_factorial_blocks(2, 3), name="exm4_2_F")


@register_preset("exm4_2_product")
def example_product() -> MoranSpec:
    return product_spec(example_e(), example_f())


@register_preset("exm4_3")
def example_power_growth() -> MoranSpec:
    rule = FormulaRule(formula="power_growth", params={"n_base": 2, "c_base": 3, "c_shift": 1})
    return MoranSpec(ambient_dim=1, rule=rule, name="exm4_3")


def _exm4_4_family(L: float, M: float, N: float, r: float) -> MobiusFamily:
    if not 0 < r < 1:
        raise DomainError(f"r must be in (0, 1), got {r}")
    q = round(1 / r)
    if not math.isclose(1 / r, q, rel_tol=1e-9):
        raise DomainError(f"1/r must be an integer, got 1/r = {1 / r:.12g}")
    return MobiusFamily(L=_int("L", L), M=_int("M", M), N=_int("N", N), Q=q)


@register_preset("exm4_4", defaults={"L": 2, "M": 3, "N": 2, "r": 0.25}, family=_exm4_4_family)
def example_mobius(L: float, M: float, N: float, r: float) -> MoranSpec:
    return build_mobius_spec(_exm4_4_family(L, M, N, r))


def _mobius_family(L: float, M: float, N: float, Q: float) -> MobiusFamily:
    return MobiusFamily(L=_int("L", L), M=_int("M", M), N=_int("N", N), Q=_int("Q", Q))


@register_preset("mobius", defaults={"L": 2, "M": 3, "N": 2, "Q": 4}, family=_mobius_family)
def mobius(L: float, M: float, N: float, Q: float) -> MoranSpec:
    return build_mobius_spec(_mobius_family(L, M, N, Q))


@register_preset("doubly_exponential", defaults={"n": 2, "base": 2})
def doubly_exponential(n: float, base: float) -> MoranSpec:
    rule = FormulaRule(formula="doubly_exponential", params={"n": n, "base": base})
    return MoranSpec(ambient_dim=1, rule=rule, name="doubly_exponential")
