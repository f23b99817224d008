# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Command dispatch for moran-dim.

CommandRunner holds one validated RunConfig, resolves its spec once and runs
the configured command through the matching mixin.
"""

import functools
import logging
from dataclasses import dataclass, field
from pathlib import Path

from rich.console import Console

from moran_dim.cli.mixins import (
    ConstructCommandMixin,
    DimsCommandMixin,
    SpectrumCommandMixin,
    VerifyCommandMixin,
)
from moran_dim.constructions.mobius import MobiusFamily
from moran_dim.constructions.sources import resolve_mobius, resolve_spec
from moran_dim.contract import Command
from moran_dim.core.schema import RunConfig
from moran_dim.core.spec import MoranSpec
from moran_dim.dims.roots import RootBracket
from moran_dim.dims.windows import WindowPolicy

logger = logging.getLogger(__name__)


def _stderr_console() -> Console:
    return Console(stderr=True)


@dataclass
class CommandRunner(DimsCommandMixin, SpectrumCommandMixin, VerifyCommandMixin, ConstructCommandMixin):
    """Runs one moran-dim command.

    Usage:
        config = load_config(config_path)
        exit_code = CommandRunner(config, base_dir=config_path.parent).run()

    Diagnostics go to the console (stderr by default); CSV and JSON go to
    the configured paths or to stdout.
    """

    config: RunConfig
    console: Console = field(default_factory=_stderr_console)
    base_dir: Path | None = None

    @functools.cached_property
    def spec(self) -> MoranSpec:
        """The configured spec (resolved once)."""
        return resolve_spec(self.config.spec, self.config.ambient_dim, self.base_dir)

    @functools.cached_property
    def mobius_family(self) -> MobiusFamily | None:
        """The Möbius family behind the spec source, if there is one."""
        if not self.config.spec.is_mobius:
            return None
        return resolve_mobius(self.config.spec)

    @property
    def bracket(self) -> RootBracket:
        return RootBracket(lo=0.0, hi=float(self.spec.ambient_dim), tol=self.config.tol)

    @property
    def policy(self) -> WindowPolicy:
        return WindowPolicy.from_config(self.config.windows)

    def run(self) -> int:
        """Run the configured command and return its exit code."""
        command = Command(self.config.command)
        handlers = {
            Command.DIMS: self.run_dims,
            Command.SPECTRUM: self.run_spectrum,
            Command.VERIFY: self.run_verify,
            Command.CONSTRUCT: self.run_construct,
        }
        logger.info("Running %s (depth %d, seed %d)", command.value, self.config.depth, self.config.seed)
        return handlers[command]()


def run_command(config: RunConfig, console: Console | None = None, base_dir: Path | None = None) -> int:
    """Run config.command and return its exit code.

    Raises:
        MoranDimError: Carrying the exit code for domain, resource and verification failures
    """
    runner = CommandRunner(config, base_dir=base_dir) if console is None else CommandRunner(config, console, base_dir)
    return runner.run()
