# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""`verify` command mixin for CommandRunner: oracle vs cut-set DP on random instances."""

import logging
from typing import TYPE_CHECKING

from rich.console import Console
from rich.markup import escape

from moran_dim.cli.output import emit_report
from moran_dim.cli.payloads import verify_payload
from moran_dim.core.errors import VerificationMismatch
from moran_dim.oracle.enumeration import EnumerationBudget
from moran_dim.oracle.verification import verify_random_instances

if TYPE_CHECKING:
    from moran_dim.core.schema import RunConfig
    from moran_dim.dims.roots import RootBracket

logger = logging.getLogger(__name__)


class VerifyCommandMixin:
    """Mixin for the `verify` command.

    Requires:
        self.config: RunConfig
        self.console: Console
        self.bracket: RootBracket
    """

    config: "RunConfig"
    console: Console

    @property
    def bracket(self) -> "RootBracket": ...

    def run_verify(self) -> int:
        """Emit the comparison report; a mismatch is raised after the report is written."""
        config = self.config
        summary = verify_random_instances(
            seed=config.seed,
            count=config.verify.instances,
            max_depth=config.verify.max_depth,
            budget=EnumerationBudget.from_config(config.budgets),
            match_tol=config.verify.match_tol,
            bracket=self.bracket,
            dp_nodes=config.budgets.dp_nodes,
        )
        emit_report(verify_payload(summary), config.out.report)

        if not summary.ok:
            raise VerificationMismatch(f"Oracle and DP disagree (seed {summary.seed}): {summary.describe()}")
        self.console.print(
            f"[bold green]Verified:[/] {escape(summary.describe())} "
            f"(seed {summary.seed}, max difference {summary.max_difference:.3g}, {summary.redraws} redraws)"
        )
        return 0
