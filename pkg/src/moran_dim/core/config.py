# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Config loading, parsing and CLI overrides.

This module provides:
- parse_config(): Parse a JSON run document into a typed RunConfig
- read_document(): Decode a JSON or YAML file with located parse errors
- load_config(): Load a JSON or YAML config file
- apply_overrides(): Return a copy of a RunConfig with CLI flags applied
"""

import dataclasses
import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml
from marshmallow import ValidationError

from moran_dim.core.errors import ConfigError
from moran_dim.core.grid import ThetaGrid, parse_theta_grid
from moran_dim.core.schema import RunConfig

logger = logging.getLogger(__name__)


def _flatten_messages(messages: Any, prefix: str = "") -> list[str]:
    if isinstance(messages, Mapping):
        flat: list[str] = []
        for key, value in messages.items():
            if key == "_schema":
                path = prefix
            else:
                path = f"{prefix}.{key}" if prefix else str(key)
            flat.extend(_flatten_messages(value, path))
        return flat
    if isinstance(messages, list | tuple):
        if all(isinstance(m, str) for m in messages):
            return [f"{prefix or 'config'}: {m}" for m in messages]
        flat = []
        for m in messages:
            flat.extend(_flatten_messages(m, prefix))
        return flat
    return [f"{prefix or 'config'}: {messages}"]


def config_error(e: ValidationError, source: str) -> ConfigError:
    """Turn a marshmallow ValidationError into a ConfigError naming every field path."""
    details = "; ".join(_flatten_messages(e.normalized_messages()))
    return ConfigError(f"Invalid config in {source}: {details}")


def parse_document(data: Any, source: str = "<config>") -> RunConfig:
    """Validate an already-decoded config document.

    Raises:
        ConfigError: With the offending field paths
    """
    if not isinstance(data, dict):
        raise ConfigError(f"Invalid config in {source}: expected a mapping at the top level")
    try:
        config = RunConfig.Schema().load(data)
    except ValidationError as e:
        raise config_error(e, source) from e
    logger.debug("Loaded %s config from %s (spec source: %s)", config.command, source, config.spec.kind)
    return config


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse a JSON run document.

    Raises:
        ConfigError: On JSON syntax errors (with line and column) or schema errors
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config parse error in {source} at line {e.lineno}, column {e.colno}: {e.msg}") from e
    return parse_document(data, source)


def read_document(path: Path | str) -> Any:
    """Decode a .json, .yaml or .yml file.

    Raises:
        ConfigError: If the file is missing or malformed (with line and column)
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    text = path.read_text()
    if path.suffix.lower() in {".yaml", ".yml"}:
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
            raise ConfigError(f"Config parse error in {path}{where}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config parse error in {path} at line {e.lineno}, column {e.colno}: {e.msg}") from e


def load_config(path: Path | str) -> RunConfig:
    """Load a run config from a .json, .yaml or .yml file.

    Raises:
        ConfigError: If the file is missing, malformed or fails validation
    """
    return parse_document(read_document(path), str(path))


# Which output path --out sets for each command
PRIMARY_OUTPUT = {
    "spectrum": "csv",
    "dims": "report",
    "verify": "report",
    "construct": "spec",
}


def apply_overrides(
    config: RunConfig,
    *,
    command: str | None = None,
    depth: int | None = None,
    thetas: str | ThetaGrid | None = None,
    out: str | None = None,
    workers: int | None = None,
    seed: int | None = None,
) -> RunConfig:
    """Return a copy of config with CLI flag values applied.

    Raises:
        ConfigError: If an override fails validation
    """
    changes: dict[str, Any] = {}
    if command is not None and command != config.command:
        changes["command"] = command
    if depth is not None:
        changes["depth"] = depth
    if thetas is not None:
        try:
            changes["thetas"] = thetas if isinstance(thetas, ThetaGrid) else parse_theta_grid(thetas)
        except ValueError as e:
            raise ConfigError(f"Invalid --thetas: {e}") from e
    if workers is not None:
        changes["workers"] = workers
    if seed is not None:
        changes["seed"] = seed
    if out is not None:
        target = PRIMARY_OUTPUT[command or config.command]
        changes["out"] = dataclasses.replace(config.out, **{target: out})
    if not changes:
        return config
    try:
        updated = dataclasses.replace(config, **changes)
    except ValidationError as e:
        raise config_error(e, "command-line flags") from e
    logger.debug("Applied overrides: %s", ", ".join(sorted(changes)))
    return updated
