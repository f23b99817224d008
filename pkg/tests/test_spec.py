# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for ratio vectors, MoranSpec validation, extreme diameters and products."""

import math

import pytest
from conftest import LOG3, LOG4

from moran_dim.constructions import preset
from moran_dim.core.errors import (
    ConfigError,
    DomainError,
    SpecValidationError,
    UnsupportedCombination,
    Violation,
)
from moran_dim.core.ratios import MAX_LEVEL, RatioVector, check_level
from moran_dim.core.spec import (
    LevelMemo,
    MoranSpec,
    extreme_diameters,
    level_params,
    log_max_prefix,
    product_spec,
    validate_spec,
)
from moran_dim.rules.explicit import ExplicitRule, PeriodicRule
from moran_dim.rules.formula import FormulaRule


class TestRatioVector:
    """Tests for the run-length encoded level data."""

    def test_from_ratios_merges_equal_neighbours(self):
        """Consecutive equal ratios collapse into one run."""
        v = RatioVector.from_ratios([0.5, 0.5, 0.25, 0.5])
        assert v.counts == (2, 1, 1)
        assert v.n == 4
        assert not v.is_uniform

    def test_uniform(self):
        v = RatioVector.uniform(3, 0.25)
        assert v.n == 3
        assert v.is_uniform
        assert v.log_max == v.log_min == pytest.approx(-LOG4)

    def test_log_power_sum(self):
        """log sum c^s matches the direct sum."""
        v = RatioVector.from_ratios([0.5, 0.25, 0.25])
        expected = math.log(0.5**0.7 + 2 * 0.25**0.7)
        assert v.log_power_sum(0.7) == pytest.approx(expected, abs=1e-14)
        assert v.log_power_sum(0) == pytest.approx(math.log(3))

    def test_log_ratio_is_one_based(self):
        v = RatioVector.from_ratios([0.5, 0.25])
        assert v.log_ratio(1) == pytest.approx(math.log(0.5))
        assert v.log_ratio(2) == pytest.approx(math.log(0.25))
        with pytest.raises(DomainError):
            v.log_ratio(0)
        with pytest.raises(DomainError, match="out of range"):
            v.log_ratio(3)

    def test_children_enumerates_every_child(self):
        v = RatioVector.from_ratios([0.5, 0.5, 0.25])
        assert [j for j, _ in v.children()] == [1, 2, 3]

    def test_single_child_violation(self):
        violations = RatioVector.from_ratios([0.5]).violations(k=4, ambient_dim=1)
        assert [v.reason for v in violations] == ["n_k = 1 < 2"]
        assert violations[0].k == 4

    def test_ratio_outside_unit_interval(self):
        violations = RatioVector.from_ratios([0.5, 1.5]).violations(k=1, ambient_dim=1)
        assert len(violations) == 1
        assert violations[0].j == 2
        assert "not in (0, 1)" in violations[0].reason

    def test_zero_ratio_is_rejected(self):
        violations = RatioVector.from_ratios([0.0, 0.5]).violations(k=1, ambient_dim=1)
        assert violations[0].j == 1

    def test_volume_violation(self):
        """sum c^d > 1 is reported with its value."""
        violations = RatioVector.from_ratios([0.6, 0.6]).violations(k=2, ambient_dim=1)
        assert len(violations) == 1
        assert violations[0].reason.startswith("sum c^d = 1.2")

    def test_volume_uses_ambient_dimension(self):
        """Two children of ratio 0.6 fit in the plane, four do not."""
        assert RatioVector.uniform(2, 0.6).violations(k=1, ambient_dim=2) == []
        assert RatioVector.uniform(4, 0.6).violations(k=1, ambient_dim=2)

    def test_violation_str(self):
        assert str(Violation(k=3, reason="bad", j=2)) == "k=3, j=2: bad"
        assert str(Violation(k=3, reason="bad")) == "k=3: bad"


class TestCheckLevel:
    """Tests for level index bounds."""

    def test_accepts_range(self):
        assert check_level(1) == 1
        assert check_level(MAX_LEVEL) == MAX_LEVEL

    def test_below_one_is_domain_error(self):
        with pytest.raises(DomainError, match=">= 1"):
            check_level(0)

    def test_above_maximum_is_config_error(self):
        with pytest.raises(ConfigError, match="2\\^31"):
            check_level(MAX_LEVEL + 1)


class TestMoranSpec:
    """Tests for MoranSpec construction and level access."""

    def test_level_params(self, cantor):
        n, vector = level_params(cantor, 7)
        assert n == 2
        assert vector.log_max == pytest.approx(-LOG3)

    def test_ambient_dim_must_be_positive(self):
        with pytest.raises(DomainError, match="ambient_dim"):
            MoranSpec(ambient_dim=0, rule=FormulaRule())

    def test_level_past_rule_end(self, two_ratio_spec):
        with pytest.raises(DomainError, match="defined up to level 3"):
            two_ratio_spec.level(4)

    def test_describe(self, cantor):
        assert cantor.describe() == "cantor: formula(constant: c=0.333333, n=2), d=1"

    def test_memo_is_bounded(self):
        memo = LevelMemo(max_entries=2)
        for k in range(1, 6):
            memo.get(k, lambda k: RatioVector.uniform(2, 0.25))
        assert len(memo) <= 2

    def test_memo_returns_cached_vector(self):
        memo = LevelMemo()
        calls = []

        def compute(k):
            calls.append(k)
            return RatioVector.uniform(2, 0.25)

        first = memo.get(1, compute)
        assert memo.get(1, compute) is first
        assert calls == [1]


class TestValidateSpec:
    """Tests for Moran structure validation."""

    def test_valid_preset(self, cantor):
        report = validate_spec(cantor, 100)
        assert report.valid
        assert report.violation_count == 0
        assert report.homogeneous
        assert report.c_star == pytest.approx(1 / 3)
        assert report.c_star_bounded
        assert report.c_star_label == "bounded away from 0"

    def test_general_spec(self, two_ratio_spec):
        report = validate_spec(two_ratio_spec, 3)
        assert report.valid
        assert not report.homogeneous
        assert report.c_star == pytest.approx(0.25)

    def test_strict_raises_with_violations(self):
        spec = MoranSpec(ambient_dim=1, rule=ExplicitRule(levels=[[0.5, 0.5], [0.7, 0.7]]))
        with pytest.raises(SpecValidationError, match="k=2: sum c\\^d = 1.4 > 1") as excinfo:
            validate_spec(spec, 2)
        assert excinfo.value.violations[0].k == 2

    def test_non_strict_reports(self):
        spec = MoranSpec(ambient_dim=1, rule=ExplicitRule(levels=[[0.5], [0.25, 0.5, 0.5]]))
        report = validate_spec(spec, 2, strict=False)
        assert not report.valid
        reasons = [str(v) for v in report.violations]
        assert "k=1: n_k = 1 < 2" in reasons
        assert any(r.startswith("k=2: sum c^d") for r in reasons)

    def test_repeated_levels_past_memo_size(self):
        """Levels recurring after the level cache is cleared keep their own verdicts."""
        spec = MoranSpec(ambient_dim=1, rule=PeriodicRule(period=[[0.5, 0.25], [0.6, 0.6]]))
        report = validate_spec(spec, 10000, strict=False)
        assert report.violation_count == 5000
        assert all(v.k % 2 == 0 for v in report.violations)

    def test_depth_past_rule_end(self, two_ratio_spec):
        with pytest.raises(DomainError):
            validate_spec(two_ratio_spec, 4)

    def test_shrinking_ratios_flag_c_star(self, power_growth):
        """c_k = 3^-(k+1) keeps shrinking, so the window diagnostic flags c_* -> 0."""
        report = validate_spec(power_growth, 50)
        assert report.valid
        assert not report.c_star_bounded
        assert report.c_star_label == "c_* -> 0"


class TestExtremeDiameters:
    """Tests for log M_k and log c̲_k."""

    def test_cantor(self, cantor):
        log_m, log_min = extreme_diameters(cantor, 5)
        assert log_m == pytest.approx(-5 * LOG3)
        assert log_min == pytest.approx(-LOG3)

    def test_general_uses_largest_ratio(self, two_ratio_spec):
        log_m, log_min = extreme_diameters(two_ratio_spec, 3)
        assert log_m == pytest.approx(math.log(0.5) + math.log(1 / 3) + math.log(0.25))
        assert log_min == pytest.approx(math.log(0.25))

    def test_empty_prefix(self, cantor):
        assert log_max_prefix(cantor, 0) == 0.0


class TestProductSpec:
    """Tests for level-square products."""

    def test_factorial_blocks_product(self):
        e, f = preset("exm4_1_E"), preset("exm4_2_F")
        product = product_spec(e, f)
        assert product.ambient_dim == 2
        assert product.name == "exm4_1_E x exm4_2_F"
        for k in (1, 3, 40, 600, 15000):
            assert product.level(k).n == 6
            assert product.level(k).log_max == pytest.approx(-LOG4)

    def test_product_is_valid_in_the_plane(self):
        spec = preset("exm4_2_product")
        assert validate_spec(spec, 1000).valid

    def test_rejects_non_homogeneous(self, cantor, two_ratio_spec):
        with pytest.raises(UnsupportedCombination, match="homogeneous"):
            product_spec(cantor, two_ratio_spec)

    def test_rejects_different_ratios(self, cantor):
        quarter = MoranSpec(ambient_dim=1, rule=FormulaRule(formula="constant", params={"n": 2, "c": 0.25}))
        with pytest.raises(UnsupportedCombination, match="differ at level 1"):
            product_spec(cantor, quarter)
