# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for level rules and the rule registry."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from marshmallow import ValidationError

from moran_dim.core.errors import DomainError, UnsupportedCombination
from moran_dim.rules import (
    BlockLevel,
    BlockScheduleRule,
    ExplicitRule,
    FormulaRule,
    PeriodicRule,
    ProductRule,
    RuleType,
    dump_rule,
    get_boundary,
    get_formula,
    get_rule_class,
    list_boundaries,
    list_formulas,
    list_rules,
)
from moran_dim.rules.base import iter_level_arrays

FACTORIAL = BlockScheduleRule(boundary="factorial_square", blocks=[BlockLevel(3, 0.25), BlockLevel(2, 0.25)])
GEOMETRIC = BlockScheduleRule(boundary="geometric_sum", blocks=[BlockLevel(2, 0.25), BlockLevel(3, 0.25)], param=2)


class TestRegistry:
    """Tests for rule, formula and boundary lookup."""

    def test_list_rules(self):
        assert list_rules() == sorted(t.value for t in RuleType)

    def test_get_rule_class(self):
        assert get_rule_class("explicit") is ExplicitRule
        assert get_rule_class("block_schedule") is BlockScheduleRule

    def test_unknown_rule(self):
        with pytest.raises(ValueError, match="Unknown rule type: spiral. Available: block_schedule"):
            get_rule_class("spiral")

    def test_formulas(self):
        assert list_formulas() == ["constant", "doubly_exponential", "power_growth"]
        with pytest.raises(ValueError, match="Unknown formula"):
            get_formula("quadratic")

    def test_boundaries(self):
        assert list_boundaries() == ["factorial_square", "geometric_sum", "linear"]
        with pytest.raises(ValueError, match="Unknown boundary function"):
            get_boundary("fibonacci", 2)

    def test_dump_and_load(self):
        """A dumped rule loads back through its registered schema."""
        data = dump_rule(GEOMETRIC)
        assert data["type"] == "block_schedule"
        assert get_rule_class(data["type"]).Schema().load(data) == GEOMETRIC


class TestExplicitRule:
    """Tests for listed levels and tail policies."""

    LEVELS = [[0.5, 0.5], [0.25, 0.25, 0.25]]

    def test_no_tail(self):
        rule = ExplicitRule(levels=self.LEVELS)
        assert rule.max_level == 2
        assert rule.level(2).n == 3
        with pytest.raises(DomainError, match="no tail policy"):
            rule.level_arrays(1, 3)

    def test_repeat_last(self):
        rule = ExplicitRule(levels=self.LEVELS, tail="repeat_last")
        assert rule.max_level is None
        assert rule.level(9).n == 3

    def test_cycle(self):
        rule = ExplicitRule(levels=self.LEVELS, tail="cycle")
        assert [rule.level(k).n for k in range(1, 6)] == [2, 3, 2, 3, 2]

    def test_homogeneous_only_when_every_level_is_uniform(self):
        assert ExplicitRule(levels=self.LEVELS).homogeneous
        assert not ExplicitRule(levels=[[0.5, 0.25]]).homogeneous

    def test_empty_levels(self):
        with pytest.raises(ValidationError, match="at least one level"):
            ExplicitRule(levels=[])
        with pytest.raises(ValidationError, match="at least one ratio"):
            ExplicitRule(levels=[[0.5], []])

    def test_general_level_arrays(self):
        rule = ExplicitRule(levels=[[0.5, 0.25], [1 / 3, 1 / 3]], tail="cycle")
        arrays = rule.level_arrays(1, 4)
        assert np.allclose(arrays.log_max, np.log([0.5, 1 / 3, 0.5, 1 / 3]))
        assert np.allclose(arrays.log_min, np.log([0.25, 1 / 3, 0.25, 1 / 3]))


class TestPeriodicRule:
    def test_period(self):
        rule = PeriodicRule(period=[[0.5, 0.5], [0.2] * 4, [0.25] * 3])
        assert [rule.level(k).n for k in range(1, 8)] == [2, 4, 3, 2, 4, 3, 2]
        assert rule.max_level is None

    def test_empty_period(self):
        with pytest.raises(ValidationError):
            PeriodicRule(period=[])


class TestBlockScheduleRule:
    """Tests for block boundaries and per-block (n, c)."""

    def test_factorial_square_blocks(self):
        """B_i = (i!)^2: blocks end at 1, 4, 36, 576, ..."""
        assert [FACTORIAL.block_of(k) for k in (1, 2, 4, 5, 36, 37, 576, 577)] == [1, 2, 2, 3, 3, 4, 4, 5]
        assert FACTORIAL.boundaries.bound(5) == 14400

    def test_blocks_alternate(self):
        assert [FACTORIAL.level(k).n for k in (1, 2, 4, 5, 36, 37, 14400, 14401)] == [3, 2, 2, 3, 3, 2, 3, 2]

    def test_geometric_sum_blocks(self):
        """B_i = L + ... + L^i with L = 2: 2, 6, 14, 30."""
        assert [GEOMETRIC.block_of(k) for k in (1, 2, 3, 6, 7, 14, 15)] == [1, 1, 2, 2, 3, 3, 4]
        assert GEOMETRIC.boundaries.bound(4) == 30

    def test_linear_blocks(self):
        rule = BlockScheduleRule(boundary="linear", blocks=[BlockLevel(2, 0.3), BlockLevel(3, 0.2)], param=3)
        assert [rule.level(k).n for k in range(1, 8)] == [2, 2, 2, 3, 3, 3, 2]

    def test_unknown_boundary(self):
        with pytest.raises(ValidationError, match="Unknown boundary function"):
            BlockScheduleRule(boundary="fibonacci", blocks=[BlockLevel(2, 0.25)])

    def test_geometric_sum_needs_base_two(self):
        with pytest.raises(ValidationError, match="L >= 2"):
            BlockScheduleRule(boundary="geometric_sum", blocks=[BlockLevel(2, 0.25)], param=1)

    def test_needs_blocks(self):
        with pytest.raises(ValidationError, match="at least one block"):
            BlockScheduleRule(blocks=[])

    def test_describe(self):
        assert FACTORIAL.describe() == "block_schedule(factorial_square: (3, 0.25), (2, 0.25))"
        assert GEOMETRIC.describe() == "block_schedule(geometric_sum(param=2): (2, 0.25), (3, 0.25))"


class TestFormulaRule:
    """Tests for closed-form level laws."""

    def test_constant_defaults(self):
        rule = FormulaRule()
        assert rule.resolved == {"n": 2.0, "c": 1.0 / 3.0}
        assert rule.level(10).n == 2

    def test_power_growth(self):
        rule = FormulaRule(formula="power_growth", params={"n_base": 2, "c_base": 3, "c_shift": 1})
        vector = rule.level(3)
        assert vector.n == 8
        assert vector.log_max == pytest.approx(-4 * math.log(3))

    def test_doubly_exponential(self):
        rule = FormulaRule(formula="doubly_exponential")
        assert rule.max_level == 1000
        assert rule.level(3).log_max == pytest.approx(-8 * math.log(2))
        with pytest.raises(DomainError, match="defined up to level 1000"):
            rule.level_arrays(1, 1001)

    def test_non_integer_count(self):
        rule = FormulaRule(formula="constant", params={"n": 2.5, "c": 0.2})
        with pytest.raises(DomainError, match="must be an integer"):
            rule.level(1)

    def test_unknown_formula(self):
        with pytest.raises(ValidationError, match="Unknown formula"):
            FormulaRule(formula="quadratic")

    def test_unknown_param(self):
        with pytest.raises(ValidationError, match="Unknown parameters for constant: q"):
            FormulaRule(formula="constant", params={"q": 1.0})


class TestProductRule:
    """Tests for the level-square product rule."""

    def test_counts_multiply(self):
        swapped = BlockScheduleRule(boundary="factorial_square", blocks=[BlockLevel(2, 0.25), BlockLevel(3, 0.25)])
        rule = ProductRule(left=FACTORIAL, right=swapped)
        assert all(rule.level(k).n == 6 for k in (1, 2, 5, 37, 600))
        arrays = rule.level_arrays(1, 600)
        assert np.allclose(arrays.log_n, math.log(6))

    def test_mismatched_ratios(self):
        rule = ProductRule(left=FormulaRule(), right=FormulaRule(params={"c": 0.25}))
        with pytest.raises(UnsupportedCombination, match="different ratios at level 1"):
            rule.level_arrays(1, 10)

    def test_non_homogeneous_factor(self):
        with pytest.raises(ValidationError, match="not homogeneous"):
            ProductRule(left=FormulaRule(), right=ExplicitRule(levels=[[0.5, 0.25]]))

    def test_max_level_is_shortest_factor(self):
        short = FormulaRule(formula="doubly_exponential", params={"max_level": 40})
        rule = ProductRule(left=short, right=FormulaRule(formula="doubly_exponential"))
        assert rule.max_level == 40


RULES = [
    FACTORIAL,
    GEOMETRIC,
    FormulaRule(formula="power_growth"),
    PeriodicRule(period=[[0.5, 0.25], [0.3, 0.3, 0.2]]),
    ExplicitRule(levels=[[0.5, 0.5], [0.2, 0.4], [0.25] * 3], tail="cycle"),
]


class TestLevelArrays:
    """Vectorized level data must agree with per-level vectors."""

    @settings(max_examples=60, deadline=None)
    @given(rule=st.sampled_from(RULES), k_lo=st.integers(1, 700), width=st.integers(0, 50))
    def test_arrays_match_levels(self, rule, k_lo, width):
        arrays = rule.level_arrays(k_lo, k_lo + width)
        assert arrays.k_hi == k_lo + width
        for i, k in enumerate(range(k_lo, k_lo + width + 1)):
            vector = rule.level(k)
            assert arrays.log_n[i] == pytest.approx(math.log(vector.n))
            assert arrays.log_max[i] == pytest.approx(vector.log_max)
            assert arrays.log_min[i] == pytest.approx(vector.log_min)

    def test_chunks_cover_range(self):
        parts = list(iter_level_arrays(FACTORIAL, 3, 100, chunk=16))
        assert [p.k_lo for p in parts] == list(range(3, 101, 16))
        joined = np.concatenate([p.log_n for p in parts])
        assert np.array_equal(joined, FACTORIAL.level_arrays(3, 100).log_n)
