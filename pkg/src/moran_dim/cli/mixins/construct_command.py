# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""`construct mobius` command mixin for CommandRunner."""

import logging
from typing import TYPE_CHECKING

from rich.console import Console
from rich.table import Table

from moran_dim.cli.output import closed_form_csv, emit_report, emit_text, format_value
from moran_dim.cli.payloads import construct_payload
from moran_dim.constructions.mobius import build_mobius_spec
from moran_dim.constructions.sources import resolve_mobius, write_spec_document
from moran_dim.contract import ConstructPayload

if TYPE_CHECKING:
    from moran_dim.core.schema import RunConfig

logger = logging.getLogger(__name__)


class ConstructCommandMixin:
    """Mixin for the `construct` command.

    Requires:
        self.config: RunConfig
        self.console: Console
    """

    config: "RunConfig"
    console: Console

    def run_construct(self) -> int:
        """Write the spec document, the closed-form CSV and the report."""
        config = self.config
        family = resolve_mobius(config.spec)
        identity_gap = family.check_identity()

        spec_path = None
        if config.out.spec is not None:
            spec_path = str(write_spec_document(build_mobius_spec(family), config.out.spec))

        thetas = list(config.thetas)
        emit_text(closed_form_csv(family.table(thetas)), config.out.csv)
        payload = construct_payload(family, thetas, identity_gap, spec_path)
        if config.out.report is not None:
            emit_report(payload, config.out.report)
        self._print_construct(payload)
        return 0

    def _print_construct(self, payload: ConstructPayload) -> None:
        table = Table(title=f"Möbius L={payload.L}, M={payload.M}, N={payload.N}, Q={payload.Q}")
        table.add_column("θ", justify="right", style="cyan")
        table.add_column("f(θ)", justify="right")
        table.add_column("exponent form", justify="right", style="dim")
        for row in payload.rows:
            table.add_row(format_value(row.theta), format_value(row.value), format_value(row.exponent_form))
        self.console.print(table)
        self.console.print(
            f"hdd = {payload.hausdorff:.6f}, bod = {payload.upper_box:.6f}, "
            f"identity gap {payload.identity_gap:.2g}"
        )
        if payload.spec_path:
            self.console.print(f"[dim]Spec document:[/] {payload.spec_path}")
