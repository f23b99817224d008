# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Tests for run config parsing, loading and command-line overrides."""

import json
import logging
from pathlib import Path

import pytest

from moran_dim.constructions.mobius import MobiusFamily
from moran_dim.core.config import apply_overrides, load_config, parse_config
from moran_dim.core.errors import ConfigError
from moran_dim.core.schema import RunConfig
from moran_dim.logging_utils import LOG_ENV_VAR, resolve_log_level
from moran_dim.rules.blocks import BlockScheduleRule

RECIPES = Path(__file__).parent.parent / "recipes"


class TestParseConfig:
    """Tests for JSON run documents."""

    def test_defaults(self):
        config = parse_config('{"spec": {"preset": "cantor"}}')
        assert config.command == "spectrum"
        assert config.depth == 1000
        assert len(config.thetas) == 21
        assert config.windows.tail_fraction == 0.5
        assert config.windows.threshold == 5e-3
        assert config.verify.instances == 100
        assert config.budgets.dp_nodes == 5_000_000
        assert config.tol == 1e-12
        assert config.assouad_steps == [1, 2, 4, 8, 16]
        assert config.out.csv is None
        assert config.spec.kind == "preset"

    def test_full_document(self):
        text = json.dumps(
            {
                "command": "dims",
                "spec": {"preset": "exm4_4", "params": {"L": 2, "M": 3, "N": 2, "r": 0.25}},
                "depth": 4096,
                "thetas": [0.25, 0.5, 1.0],
                "windows": {"tail_fraction": 0.875, "threshold": 0.01},
                "workers": 2,
                "out": {"report": "dims.json"},
            }
        )
        config = parse_config(text)
        assert config.command == "dims"
        assert config.spec.is_mobius
        assert list(config.thetas) == [0.25, 0.5, 1.0]
        assert config.windows.tail_fraction == 0.875
        assert config.out.report == "dims.json"

    def test_inline_rule(self):
        text = json.dumps(
            {
                "spec": {
                    "rule": {
                        "type": "block_schedule",
                        "boundary": "geometric_sum",
                        "param": 2,
                        "blocks": [{"n": 2, "c": 0.25}, {"n": 3, "c": 0.25}],
                    }
                }
            }
        )
        config = parse_config(text)
        assert isinstance(config.spec.rule, BlockScheduleRule)
        assert config.spec.rule == MobiusFamily(L=2, M=3, N=2, Q=4).rule()

    def test_syntax_error_location(self):
        with pytest.raises(ConfigError, match="at line 1, column 10"):
            parse_config('{"spec": }')

    def test_top_level_must_be_mapping(self):
        with pytest.raises(ConfigError, match="expected a mapping"):
            parse_config("[1, 2]")

    @pytest.mark.parametrize(
        "document,message",
        [
            ({}, "spec: Missing data for required field"),
            ({"spec": {"preset": "cantor", "mobius": {}}}, "spec: Exactly one of preset, rule, file or mobius"),
            ({"spec": {}}, "got none"),
            ({"spec": {"rule": {"type": "spiral"}}}, "spec.rule: Unknown rule type: spiral"),
            ({"spec": {"rule": {"levels": [[0.5, 0.5]]}}}, "missing 'type'"),
            ({"spec": {"file": "x.json", "params": {"a": 1}}}, "spec: params only apply to presets"),
            ({"spec": {"preset": "cantor"}, "depth": 0}, "depth: depth must be in \\[1, 2\\^31\\]"),
            ({"spec": {"preset": "cantor"}, "windows": {"tail_fraction": 1.5}}, "tail_fraction must be in \\(0, 1\\)"),
            ({"spec": {"preset": "cantor"}, "verify": {"max_depth": 20}}, "max_depth must be in \\[2, 12\\]"),
            ({"spec": {"preset": "cantor"}, "thetas": "0:1"}, "thetas: θ-grid must look like"),
            ({"spec": {"preset": "cantor"}, "workers": 0}, "workers must be >= 1"),
            ({"spec": {"preset": "cantor"}, "assouad_steps": []}, "assouad_steps"),
            ({"spec": {"preset": "cantor"}, "command": "plot"}, "command"),
            ({"spec": {"preset": "cantor"}, "colour": "red"}, "colour: Unknown field"),
            ({"spec": {"preset": "cantor"}, "command": "construct"}, "construct needs a Möbius source"),
        ],
    )
    def test_invalid_documents(self, document, message):
        with pytest.raises(ConfigError, match=message):
            parse_config(json.dumps(document))

    def test_error_names_source(self):
        with pytest.raises(ConfigError, match="Invalid config in run.json"):
            parse_config("{}", source="run.json")


class TestLoadConfig:
    """Tests for reading config files."""

    def test_yaml(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("command: dims\nspec:\n  preset: cantor\ndepth: 500\n")
        config = load_config(path)
        assert config.command == "dims"
        assert config.depth == 500

    def test_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"spec": {"mobius": {"L": 3, "M": 4, "N": 2, "Q": 5}}}')
        config = load_config(path)
        assert config.spec.mobius.L == 3
        assert config.spec.is_mobius

    def test_yaml_error_location(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("spec:\n  preset: [cantor\n")
        with pytest.raises(ConfigError, match="Config parse error in .*bad.yaml at line"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="Config file not found"):
            load_config(tmp_path / "absent.yaml")

    @pytest.mark.parametrize("recipe", sorted(RECIPES.glob("*/*.yaml")), ids=lambda p: f"{p.parent.name}/{p.name}")
    def test_bundled_recipes_load(self, recipe):
        """Every bundled recipe is a valid run config."""
        assert isinstance(load_config(recipe), RunConfig)


class TestApplyOverrides:
    """Tests for command-line flags layered over a config."""

    @pytest.fixture
    def config(self) -> RunConfig:
        return parse_config('{"spec": {"preset": "cantor"}, "depth": 200}')

    def test_no_changes_returns_same_config(self, config):
        assert apply_overrides(config) is config

    def test_depth_and_thetas(self, config):
        updated = apply_overrides(config, depth=300, thetas="0:1:0.5")
        assert updated.depth == 300
        assert list(updated.thetas) == [0.0, 0.5, 1.0]
        assert config.depth == 200

    def test_out_follows_command(self, config):
        assert apply_overrides(config, out="s.csv").out.csv == "s.csv"
        dims = apply_overrides(config, command="dims", out="d.json")
        assert dims.command == "dims"
        assert dims.out.report == "d.json"
        assert dims.out.csv is None

    def test_workers_and_seed(self, config):
        updated = apply_overrides(config, workers=3, seed=9)
        assert (updated.workers, updated.seed) == (3, 9)

    def test_invalid_thetas(self, config):
        with pytest.raises(ConfigError, match="Invalid --thetas"):
            apply_overrides(config, thetas="1:0:0.1")

    def test_invalid_depth(self, config):
        with pytest.raises(ConfigError, match="command-line flags: depth"):
            apply_overrides(config, depth=0)

    def test_construct_needs_mobius(self, config):
        with pytest.raises(ConfigError, match="Möbius"):
            apply_overrides(config, command="construct")


class TestLogLevel:
    """Tests for MORAN_DIM_LOG."""

    def test_unset_uses_default(self, monkeypatch):
        monkeypatch.delenv(LOG_ENV_VAR, raising=False)
        assert resolve_log_level() == logging.INFO

    @pytest.mark.parametrize(("raw", "level"), [("debug", logging.DEBUG), ("ERROR", logging.ERROR), (" Info ", logging.INFO)])
    def test_known_levels(self, monkeypatch, raw, level):
        monkeypatch.setenv(LOG_ENV_VAR, raw)
        assert resolve_log_level() == level

    def test_unknown_level_falls_back(self, monkeypatch):
        monkeypatch.setenv(LOG_ENV_VAR, "chatty")
        assert resolve_log_level() == logging.INFO
