# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for brute-force cut-set enumeration and the random-instance oracle."""

import math

import numpy as np
import pytest
from conftest import CANTOR_DIM, LOG3
from hypothesis import example, given, settings
from hypothesis import strategies as st

from moran_dim.core.errors import DomainError, ResourceError
from moran_dim.core.words import CutSet, is_cut_set, make_word
from moran_dim.dims.classic import s_k_values
from moran_dim.dims.cutsets import AdmissibleBand, s_delta_theta_general
from moran_dim.oracle import (
    EnumerationBudget,
    brute_force_s_delta_theta,
    count_admissible_cut_sets,
    enumerate_admissible_cut_sets,
    generate_instances,
    lemma_sum_check,
    random_spec,
    verify_random_instances,
)

GOLDEN_DIM = math.log((1 + math.sqrt(5)) / 2) / math.log(2)


class TestEnumeration:
    """Tests for admissible cut-set enumeration on known bands."""

    def test_cantor_counts(self, cantor):
        """Each level-1 interval is kept or split: 2 x 2 cut sets."""
        assert count_admissible_cut_sets(cantor, AdmissibleBand.from_scale(-LOG3, 0.5)) == 4
        assert count_admissible_cut_sets(cantor, AdmissibleBand.from_scale(-LOG3, 1.0)) == 1

    def test_enumeration_matches_count(self, cantor):
        band = AdmissibleBand.from_scale(-LOG3, 0.5)
        cut_sets = enumerate_admissible_cut_sets(cantor, band)
        assert len(cut_sets) == 4
        assert len(set(cut_sets)) == 4
        assert all(is_cut_set(cantor, list(c.words)) for c in cut_sets)
        assert {len(c) for c in cut_sets} == {2, 3, 4}

    def test_brute_force_cantor(self, cantor):
        """Every admissible cut set of a Cantor band has sum |J_u|^dim = 1."""
        band = AdmissibleBand.from_scale(-LOG3, 0.5)
        assert brute_force_s_delta_theta(cantor, band) == pytest.approx(CANTOR_DIM, abs=1e-11)

    def test_brute_force_two_ratio(self, two_ratio_spec):
        band = AdmissibleBand.from_scale(math.log(0.5), 1.0)
        assert brute_force_s_delta_theta(two_ratio_spec, band) == pytest.approx(GOLDEN_DIM, abs=1e-11)

    def test_node_budget(self, cantor):
        band = AdmissibleBand.from_scale(-LOG3, 0.2)
        with pytest.raises(ResourceError, match="visited more than 5 tree nodes"):
            enumerate_admissible_cut_sets(cantor, band, EnumerationBudget(max_nodes=5))

    def test_cut_set_budget(self, cantor):
        band = AdmissibleBand.from_scale(-LOG3, 0.5)
        with pytest.raises(ResourceError, match="More than 2 admissible cut sets"):
            enumerate_admissible_cut_sets(cantor, band, EnumerationBudget(max_cut_sets=2))

    def test_invalid_budget(self):
        with pytest.raises(DomainError, match="must be positive"):
            EnumerationBudget(max_nodes=0)


class TestLemmaSumCheck:
    """Tests for sum |J_u|^β > 1 below min s_k."""

    def test_holds_below_minimum(self, two_ratio_spec):
        cut = CutSet.of([make_word(two_ratio_spec, [1]), make_word(two_ratio_spec, [2])])
        assert lemma_sum_check(two_ratio_spec, cut, GOLDEN_DIM * (1 - 1e-6))

    def test_mixed_levels(self, cantor):
        words = [make_word(cantor, [1]), make_word(cantor, [2, 1]), make_word(cantor, [2, 2])]
        assert lemma_sum_check(cantor, CutSet.of(words), 0.6)

    def test_beta_at_minimum_is_rejected(self, cantor):
        cut = CutSet.of([make_word(cantor, [1]), make_word(cantor, [2])])
        with pytest.raises(DomainError, match="must be below min s_k"):
            lemma_sum_check(cantor, cut, CANTOR_DIM)

    def test_negative_beta(self, cantor):
        cut = CutSet.of([make_word(cantor, [1]), make_word(cantor, [2])])
        with pytest.raises(DomainError, match="β must be >= 0"):
            lemma_sum_check(cantor, cut, -0.1)


class TestRandomInstances:
    """Tests for instance generation and the DP-vs-oracle sweep."""

    def test_seeded_generation_repeats(self):
        first = generate_instances(seed=3, count=5, max_depth=4)
        second = generate_instances(seed=3, count=5, max_depth=4)
        assert [i.cut_sets for i in first] == [i.cut_sets for i in second]
        assert [i.band for i in first] == [i.band for i in second]
        assert all(not i.spec.homogeneous for i in first)
        assert all(2 <= i.depth <= 4 for i in first)

    def test_cut_set_cap(self):
        instances = generate_instances(seed=5, count=10, max_depth=6, max_cut_sets=50)
        assert all(1 <= i.cut_sets <= 50 for i in instances)

    def test_random_spec_depth(self):
        with pytest.raises(DomainError, match="max_depth must be >= 2"):
            random_spec(np.random.default_rng(0), max_depth=1)

    def test_verify(self):
        summary = verify_random_instances(seed=42, count=100, max_depth=6)
        assert summary.ok
        assert len(summary.outcomes) == 100
        assert summary.counts_matched == 100
        assert summary.max_difference <= 1e-9
        assert summary.describe() == "100/100 matched <= 1e-09"

    def test_verify_unit_ratio_sum_instance(self):
        summary = verify_random_instances(seed=16996, count=1)
        assert summary.ok
        assert summary.matched == 1

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    @example(seed=16996)
    def test_dp_matches_brute_force(self, seed):
        """The merged-tree DP reaches the minimum over enumerated cut sets."""
        (instance,) = generate_instances(seed, 1, max_depth=5, max_cut_sets=500)
        cut_sets = enumerate_admissible_cut_sets(instance.spec, instance.band)
        assert len(cut_sets) == instance.cut_sets
        assert all(is_cut_set(instance.spec, list(c.words)) for c in cut_sets)
        dp = s_delta_theta_general(instance.spec, instance.band)
        assert dp == pytest.approx(brute_force_s_delta_theta(instance.spec, instance.band), abs=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), margin=st.floats(1e-6, 0.5))
    @example(seed=279004350, margin=1e-6)
    def test_lemma_on_random_cut_sets(self, seed, margin):
        """Every admissible cut set has sum |J_u|^β > 1 for β below min s_k."""
        (instance,) = generate_instances(seed, 1, max_depth=5, max_cut_sets=200)
        for cut in enumerate_admissible_cut_sets(instance.spec, instance.band):
            floor = float(s_k_values(instance.spec, cut.min_level, cut.max_level).min())
            assert lemma_sum_check(instance.spec, cut, floor * (1 - margin))

