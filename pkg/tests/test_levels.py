# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for level tables, scale lookups and θ-grids."""

import math

import numpy as np
import pytest
from conftest import CANTOR_DIM, LOG3, factorial_blocks_s_k

from moran_dim.core.errors import DomainError, ResourceError, UnsupportedCombination
from moran_dim.core.grid import ThetaGrid, parse_theta_grid
from moran_dim.core.levels import (
    build_level_table,
    first_level_at_or_below,
    level_at_scale,
    threshold_levels,
)
from moran_dim.core.spec import MoranSpec
from moran_dim.rules.explicit import ExplicitRule


class TestLevelTable:
    """Tests for prefix sums S_k, P_k and s_k."""

    def test_cantor(self, cantor):
        table = build_level_table(cantor, 5, 10)
        assert len(table) == 6
        assert np.allclose(table.s, CANTOR_DIM)
        assert table.log_m_at(10) == pytest.approx(-10 * LOG3)
        assert table.s_at(7) == pytest.approx(CANTOR_DIM)

    def test_index_outside_range(self, cantor):
        table = build_level_table(cantor, 5, 10)
        with pytest.raises(DomainError, match="outside the table range"):
            table.index(11)

    def test_slice(self, cantor):
        table = build_level_table(cantor, 5, 10)
        assert table.slice(6, 8) == slice(1, 4)

    def test_factorial_blocks(self, factorial_blocks):
        table = build_level_table(factorial_blocks, 30, 600)
        for k in (30, 36, 37, 576, 600):
            assert table.s_at(k) == pytest.approx(factorial_blocks_s_k(k), abs=1e-12)

    def test_budget(self, cantor):
        with pytest.raises(ResourceError, match="over the budget of 3"):
            build_level_table(cantor, 5, 10, max_levels=3)

    def test_empty_range(self, cantor):
        with pytest.raises(DomainError, match="Empty level range"):
            build_level_table(cantor, 10, 5)

    def test_needs_homogeneous(self, two_ratio_spec):
        with pytest.raises(UnsupportedCombination, match="build_level_table needs a homogeneous spec"):
            build_level_table(two_ratio_spec, 1, 3)


class TestScaleLookup:
    """Tests for the first level reaching a scale."""

    def test_threshold_levels(self):
        log_c_sum = np.array([-1.0, -2.0, -3.0])
        assert threshold_levels(log_c_sum, np.array([-1.5, -2.0, -5.0])).tolist() == [1, 1, 3]

    def test_first_level(self, cantor):
        assert first_level_at_or_below(cantor, -3.5 * LOG3) == 4

    def test_exact_tie_counts(self, cantor):
        assert first_level_at_or_below(cantor, -3 * LOG3) == 3

    def test_start(self, cantor):
        assert first_level_at_or_below(cantor, -LOG3, start=5) == 5

    def test_level_at_scale(self, cantor):
        """1/27 <= 0.1 < 1/9."""
        assert level_at_scale(cantor, math.log(0.1)) == 3

    def test_deep_scale(self, cantor):
        assert first_level_at_or_below(cantor, -5000.5 * LOG3) == 5001

    def test_budget(self, cantor):
        with pytest.raises(ResourceError, match="within 2000 levels"):
            first_level_at_or_below(cantor, -1e9, max_levels=2000)

    def test_rule_stops_first(self):
        spec = MoranSpec(ambient_dim=1, rule=ExplicitRule(levels=[[0.5, 0.5]] * 3))
        with pytest.raises(DomainError, match="stops at level 3"):
            first_level_at_or_below(spec, math.log(0.01))


class TestThetaGrid:
    """Tests for θ-grid parsing."""

    def test_range_includes_both_ends(self):
        grid = parse_theta_grid("0:1:0.05")
        assert len(grid) == 21
        assert grid.values[0] == 0.0
        assert grid.values[-1] == 1.0
        assert grid.values[3] == 0.15
        assert str(grid) == "0:1:0.05"

    def test_offset_range(self):
        grid = parse_theta_grid("0.15:1:0.05")
        assert len(grid) == 18
        assert grid.values[3] == 0.3

    def test_list(self):
        grid = parse_theta_grid([0.5, 0.25 + 0.5])
        assert list(grid) == [0.5, 0.75]
        assert str(grid) == "0.5,0.75"

    @pytest.mark.parametrize(
        "text,message",
        [
            ("0:1", "lo:hi:step"),
            ("a:1:0.1", "non-numeric"),
            ("0:1:0", "step must be positive"),
            ("0.5:0.2:0.1", "below lower end"),
            ("0:2:0.5", "outside \\[0, 1\\]"),
        ],
    )
    def test_malformed(self, text, message):
        with pytest.raises(ValueError, match=message):
            parse_theta_grid(text)

    def test_must_increase(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            ThetaGrid(values=(0.5, 0.2))

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            ThetaGrid(values=())
