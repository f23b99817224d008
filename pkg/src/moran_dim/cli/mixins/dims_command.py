# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
`dims` command mixin for CommandRunner.

Estimates the Hausdorff, upper box/packing and Assouad dimensions over both
tail windows.
"""

import logging
from typing import TYPE_CHECKING

from rich.console import Console
from rich.table import Table

from moran_dim.cli.output import emit_report, format_value
from moran_dim.cli.payloads import classic_payload
from moran_dim.contract import ClassicPayload
from moran_dim.core.spec import validate_spec
from moran_dim.dims.classic import ClassicEstimates, classic_dim_estimates, gap_bound_report, s_k_values
from moran_dim.dims.intermediate import c_star_zero_hypothesis
from moran_dim.dims.windows import Window

if TYPE_CHECKING:
    from moran_dim.core.schema import RunConfig
    from moran_dim.core.spec import MoranSpec
    from moran_dim.dims.roots import RootBracket
    from moran_dim.dims.windows import WindowPolicy

logger = logging.getLogger(__name__)


class DimsCommandMixin:
    """Mixin for the `dims` command.

    Requires:
        self.config: RunConfig
        self.console: Console
        self.spec: MoranSpec
        self.bracket: RootBracket
        self.policy: WindowPolicy
    """

    config: "RunConfig"
    console: Console

    @property
    def spec(self) -> "MoranSpec": ...

    @property
    def bracket(self) -> "RootBracket": ...

    @property
    def policy(self) -> "WindowPolicy": ...

    def _window_estimates(self, window: Window, steps: list[int]) -> ClassicEstimates:
        max_levels = self.config.budgets.max_levels
        if len(window) > 1:
            return classic_dim_estimates(self.spec, (window.lo, window.hi), steps, self.bracket, max_levels)
        # Single-level window: s_* and s^* are that level's s_k
        value = float(s_k_values(self.spec, window.lo, window.hi, self.bracket, max_levels)[0])
        return ClassicEstimates((window.lo, window.hi), value, value, argmin_level=window.lo, argmax_level=window.lo)

    def run_dims(self) -> int:
        """Compute and emit the classic dimension report."""
        config = self.config
        spec = self.spec
        validation = validate_spec(spec, config.depth)
        w1, w2 = self.policy.windows(config.depth)
        logger.info("Classic dimensions of %s, %s", spec.describe(), self.policy.describe(config.depth))

        estimates = (self._window_estimates(w1, config.assouad_steps), self._window_estimates(w2, []))
        hypothesis = c_star_zero_hypothesis(spec, (w1.lo, w1.hi)) if len(w1) > 1 else None
        gap = None
        if spec.homogeneous and len(w1) > 1:
            gap = gap_bound_report(spec, (w1.lo, w1.hi), config.budgets.max_levels)

        payload = classic_payload(spec, config.depth, estimates, self.policy.threshold, validation, hypothesis, gap)
        self._print_dims(payload)
        emit_report(payload, config.out.report)
        return 0

    def _print_dims(self, payload: ClassicPayload) -> None:
        table = Table(title=f"Dimensions: {payload.spec}")
        table.add_column("Quantity", style="cyan")
        table.add_column(f"W1 {list(payload.window)}", justify="right")
        table.add_column(f"W2 {list(payload.window2)}", justify="right")
        table.add_column("Status", style="yellow")
        table.add_row(
            "Hausdorff (s_*)",
            format_value(payload.hausdorff),
            format_value(payload.hausdorff_window2),
            payload.hausdorff_label.value,
        )
        table.add_row(
            "Upper box / packing (s^*)",
            format_value(payload.upper_box),
            format_value(payload.upper_box_window2),
            payload.upper_box_label.value,
        )
        if payload.assouad is not None:
            table.add_row("Assouad (s^**)", format_value(payload.assouad), "", payload.assouad_label or "")
        self.console.print(table)
        self.console.print(f"[dim]c_*:[/] {payload.validation.c_star_label}")
