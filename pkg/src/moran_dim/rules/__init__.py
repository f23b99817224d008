# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Level rules producing (n_k, φ_k) for every level k.

Supported rule types:
- explicit: listed ratio vectors with a tail policy
- periodic: a repeating list of ratio vectors
- block_schedule: constant (n, c) on blocks cut by a boundary function
- formula: a named closed-form law
- product: level-square product of two homogeneous rules
"""

from .base import (
    LevelArrays,
    LevelRule,
    LevelRuleField,
    RuleType,
    dump_rule,
    get_rule_class,
    list_rules,
    register_rule,
)
from .blocks import BlockLevel, BlockScheduleRule, get_boundary, list_boundaries
from .explicit import ExplicitRule, PeriodicRule
from .formula import FormulaRule, get_formula, list_formulas
from .product import ProductRule

__all__ = [
    # Base types
    "LevelArrays",
    "LevelRule",
    "LevelRuleField",
    "RuleType",
    "dump_rule",
    "get_rule_class",
    "list_rules",
    "register_rule",
    # Rule families
    "BlockLevel",
    "BlockScheduleRule",
    "ExplicitRule",
    "FormulaRule",
    "PeriodicRule",
    "ProductRule",
    "get_boundary",
    "get_formula",
    "list_boundaries",
    "list_formulas",
]
