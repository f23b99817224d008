# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Turning a configured spec source into a MoranSpec.

Sources are a preset (with params), an inline rule, a spec document on disk,
or Möbius parameters. Spec documents hold {"ambient_dim", "rule", "name"}
and are what `construct` writes.
"""

import json
import logging
from pathlib import Path
from typing import Any

from marshmallow import ValidationError

from moran_dim.constructions.mobius import MobiusFamily, build_mobius_spec
from moran_dim.constructions.presets import get_preset
from moran_dim.core.config import config_error, read_document
from moran_dim.core.errors import ConfigError, DomainError
from moran_dim.core.schema import SpecDocument, SpecSource
from moran_dim.core.spec import MoranSpec
from moran_dim.rules.base import dump_rule

logger = logging.getLogger(__name__)


def _preset(name: str):
    try:
        return get_preset(name)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def load_spec_document(path: Path | str) -> MoranSpec:
    """Load a spec document written by `construct` (or by hand).

    Raises:
        ConfigError: If the file is missing, malformed or invalid
    """
    data = read_document(path)
    if not isinstance(data, dict):
        raise ConfigError(f"Invalid config in {path}: expected a mapping at the top level")
    try:
        document = SpecDocument.Schema().load(data)
    except ValidationError as e:
        raise config_error(e, str(path)) from e
    return MoranSpec(ambient_dim=document.ambient_dim, rule=document.rule, name=document.name or Path(path).stem)


def spec_document(spec: MoranSpec) -> dict[str, Any]:
    document: dict[str, Any] = {"ambient_dim": spec.ambient_dim, "rule": dump_rule(spec.rule)}
    if spec.name:
        document["name"] = spec.name
    return document


def write_spec_document(spec: MoranSpec, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(spec_document(spec), indent=2) + "\n")
    logger.info("Wrote spec document %s", path)
    return path


def resolve_mobius(source: SpecSource) -> MobiusFamily:
    """The Möbius family behind a source.

    Raises:
        DomainError: If the source is not a Möbius construction
    """
    if source.mobius is not None:
        m = source.mobius
        return MobiusFamily(L=m.L, M=m.M, N=m.N, Q=m.Q)
    if source.preset is not None:
        return _preset(source.preset).mobius(**source.params)
    raise DomainError(f"Spec source {source.kind} is not a Möbius construction")


def resolve_spec(source: SpecSource, ambient_dim: int | None = None, base_dir: Path | None = None) -> MoranSpec:
    """Build the spec a source describes.

    Args:
        source: Validated spec source
        ambient_dim: Overrides the source's own d when set
        base_dir: Directory relative spec file paths are resolved against

    Raises:
        ConfigError: For unknown presets or unreadable spec files
        DomainError: For invalid preset parameters
    """
    if source.preset is not None:
        spec = _preset(source.preset).spec(**source.params)
    elif source.rule is not None:
        spec = MoranSpec(ambient_dim=1, rule=source.rule, name=source.rule.type)
    elif source.file is not None:
        path = Path(source.file)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        spec = load_spec_document(path)
    else:
        spec = build_mobius_spec(resolve_mobius(source))
    if ambient_dim is not None and ambient_dim != spec.ambient_dim:
        spec = MoranSpec(ambient_dim=ambient_dim, rule=spec.rule, name=spec.name)
    logger.debug("Resolved %s source to %s", source.kind, spec.describe())
    return spec
