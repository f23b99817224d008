# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for the Möbius family, the preset registry and spec sources."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moran_dim.constructions import (
    MobiusFamily,
    build_mobius_spec,
    get_preset,
    list_presets,
    load_spec_document,
    preset,
    resolve_mobius,
    resolve_spec,
    spec_document,
    write_spec_document,
)
from moran_dim.core.errors import ConfigError, DomainError
from moran_dim.core.schema import MobiusSource, SpecSource
from moran_dim.rules.formula import FormulaRule


class TestMobiusFamily:
    """Tests for the closed-form spectrum of the Möbius family."""

    def test_values(self, mobius_family):
        assert mobius_family.hausdorff == pytest.approx(0.59749, abs=1e-5)
        assert mobius_family.upper_box == pytest.approx(0.69499, abs=1e-5)
        assert mobius_family.plateau_end == 0.25

    def test_plateau(self, mobius_family):
        for theta in (0.0, 0.1, 0.25):
            assert mobius_family.closed_form(theta) == mobius_family.hausdorff

    def test_continuous_at_plateau_end(self, mobius_family):
        assert mobius_family.closed_form(0.25 + 1e-12) == pytest.approx(mobius_family.hausdorff, abs=1e-10)

    def test_identity(self, mobius_family):
        assert mobius_family.check_identity() <= 1e-12

    def test_table(self, mobius_family):
        rows = mobius_family.table([0.0, 0.5, 1.0])
        assert rows[0].exponent_form is None
        assert rows[2].value == pytest.approx(rows[2].exponent_form, abs=1e-12)

    def test_rule_uses_n_first(self, mobius_family):
        spec = build_mobius_spec(mobius_family)
        assert [spec.level(k).n for k in (1, 2, 3, 6, 7, 14, 15)] == [2, 2, 3, 3, 2, 2, 3]
        assert spec.name == "mobius(L=2, M=3, N=2, Q=4)"

    @pytest.mark.parametrize(
        "params,message",
        [
            ({"L": 1, "M": 3, "N": 2, "Q": 4}, "L >= 2"),
            ({"L": 2, "M": 3, "N": 1, "Q": 4}, "N >= 2"),
            ({"L": 2, "M": 2, "N": 3, "Q": 4}, "N <= M"),
            ({"L": 2, "M": 4, "N": 2, "Q": 4}, "M < Q"),
            ({"L": 2.5, "M": 3, "N": 2, "Q": 4}, "L must be an integer"),
        ],
    )
    def test_constraints(self, params, message):
        with pytest.raises(DomainError, match=message):
            MobiusFamily(**params)

    def test_theta_range(self, mobius_family):
        with pytest.raises(DomainError):
            mobius_family.closed_form(1.5)
        with pytest.raises(DomainError):
            mobius_family.exponent_form(0.0)

    def test_validate_exponents(self):
        assert MobiusFamily.validate_exponents(2, math.log(4), math.log(2), math.log(5)) == 2
        with pytest.raises(DomainError, match="a / b must be an integer"):
            MobiusFamily.validate_exponents(2, math.log(3), math.log(2), math.log(5))
        with pytest.raises(DomainError, match="Need c > a"):
            MobiusFamily.validate_exponents(2, math.log(4), math.log(2), math.log(3))

    @settings(max_examples=60, deadline=None)
    @given(
        L=st.integers(2, 6),
        N=st.integers(2, 6),
        extra=st.integers(0, 4),
        gap=st.integers(1, 6),
    )
    def test_closed_form_is_monotone_and_bounded(self, L, N, extra, gap):
        """f rises from the Hausdorff plateau to the upper box dimension."""
        M = N + extra
        family = MobiusFamily(L=L, M=M, N=N, Q=M + gap)
        values = [family.closed_form(float(t)) for t in np.linspace(0.0, 1.0, 201)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:], strict=False))
        assert values[0] == family.hausdorff
        assert values[-1] == pytest.approx((L * family.a + family.b) / ((L + 1) * family.c))
        assert 0 < values[0] <= values[-1] < 1


class TestPresets:
    """Tests for the preset registry."""

    def test_list(self):
        assert list_presets() == sorted(
            [
                "cantor",
                "doubly_exponential",
                "exm4_1_E",
                "exm4_2_F",
                "exm4_2_product",
                "exm4_3",
                "exm4_4",
                "mobius",
            ]
        )

    def test_unknown(self):
        with pytest.raises(ValueError, match="Unknown preset: spiral. Available: cantor"):
            get_preset("spiral")

    def test_unknown_parameter(self):
        with pytest.raises(DomainError, match="Unknown parameters for preset cantor: q \\(accepted: none\\)"):
            preset("cantor", q=1)

    def test_exm4_4_matches_mobius(self):
        assert preset("exm4_4").rule == preset("mobius").rule
        assert preset("exm4_4", r=0.2).rule == preset("mobius", Q=5).rule

    @pytest.mark.parametrize(
        "params,message",
        [
            ({"r": 0.3}, "1/r must be an integer"),
            ({"r": 1.5}, "r must be in \\(0, 1\\)"),
            ({"L": 2.5}, "Parameter L must be an integer"),
        ],
    )
    def test_exm4_4_parameters(self, params, message):
        with pytest.raises(DomainError, match=message):
            preset("exm4_4", **params)

    def test_mobius_flags(self):
        assert get_preset("exm4_4").is_mobius
        assert get_preset("mobius").mobius(L=3, M=4, N=2, Q=5) == MobiusFamily(L=3, M=4, N=2, Q=5)
        assert not get_preset("cantor").is_mobius
        with pytest.raises(DomainError, match="not a Möbius construction"):
            get_preset("cantor").mobius()

    def test_examples_e_and_f_swap_blocks(self):
        e, f = preset("exm4_1_E"), preset("exm4_2_F")
        assert [e.level(k).n for k in (1, 2, 5)] == [3, 2, 3]
        assert [f.level(k).n for k in (1, 2, 5)] == [2, 3, 2]

    def test_product(self):
        spec = preset("exm4_2_product")
        assert spec.homogeneous
        assert spec.ambient_dim == 2
        assert {spec.level(k).n for k in (1, 2, 5, 37, 577)} == {6}

    def test_doubly_exponential(self):
        spec = preset("doubly_exponential")
        assert spec.rule == FormulaRule(formula="doubly_exponential", params={"n": 2, "base": 2})


class TestSources:
    """Tests for resolving configured spec sources."""

    def test_preset(self):
        spec = resolve_spec(SpecSource(preset="exm4_4", params={"M": 4, "r": 0.2}))
        assert spec.rule == MobiusFamily(L=2, M=4, N=2, Q=5).rule()

    def test_ambient_dim_override(self):
        spec = resolve_spec(SpecSource(preset="cantor"), ambient_dim=2)
        assert spec.ambient_dim == 2
        assert spec.name == "cantor"

    def test_inline_rule(self):
        rule = FormulaRule(params={"n": 3, "c": 0.25})
        spec = resolve_spec(SpecSource(rule=rule))
        assert spec.rule == rule
        assert spec.name == "formula"

    def test_mobius_source(self):
        spec = resolve_spec(SpecSource(mobius=MobiusSource(L=3, M=4, N=2, Q=5)))
        assert spec.rule == MobiusFamily(L=3, M=4, N=2, Q=5).rule()

    def test_unknown_preset_is_config_error(self):
        with pytest.raises(ConfigError, match="Unknown preset: nope"):
            resolve_spec(SpecSource(preset="nope"))

    def test_document_round_trip(self, tmp_path):
        original = preset("exm4_1_E")
        write_spec_document(original, tmp_path / "specs" / "e.json")
        spec = resolve_spec(SpecSource(file="specs/e.json"), base_dir=tmp_path)
        assert spec.rule == original.rule
        assert spec.name == "exm4_1_E"

    def test_document_fields(self):
        document = spec_document(preset("cantor"))
        assert document["ambient_dim"] == 1
        assert document["name"] == "cantor"
        assert document["rule"]["type"] == "formula"

    def test_unnamed_document_uses_file_stem(self, tmp_path):
        path = tmp_path / "line.json"
        path.write_text(json.dumps({"rule": {"type": "explicit", "levels": [[0.5, 0.25]], "tail": "cycle"}}))
        spec = load_spec_document(path)
        assert spec.name == "line"
        assert not spec.homogeneous

    def test_document_without_rule(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text('{"ambient_dim": 1}')
        with pytest.raises(ConfigError, match="needs a rule"):
            load_spec_document(path)

    def test_document_must_be_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError, match="expected a mapping"):
            load_spec_document(path)

    def test_missing_document(self, tmp_path):
        with pytest.raises(ConfigError, match="Config file not found"):
            resolve_spec(SpecSource(file="absent.json"), base_dir=tmp_path)

    def test_resolve_mobius(self):
        assert resolve_mobius(SpecSource(preset="exm4_4")) == MobiusFamily(L=2, M=3, N=2, Q=4)
        assert resolve_mobius(SpecSource(mobius=MobiusSource())) == MobiusFamily(L=2, M=3, N=2, Q=4)
        with pytest.raises(DomainError, match="Spec source rule is not a Möbius construction"):
            resolve_mobius(SpecSource(rule=FormulaRule()))
