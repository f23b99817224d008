# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
`spectrum` command mixin for CommandRunner.

Computes the upper and lower intermediate spectra, checks every row, and
writes the CSV (plus optional SVG and JSON report).
"""

import logging
from typing import TYPE_CHECKING

from rich.console import Console
from rich.markup import escape

from moran_dim.cli.output import emit_report, emit_text, spectrum_csv, write_spectrum_svg
from moran_dim.cli.payloads import spectrum_payload
from moran_dim.core.errors import VerificationMismatch
from moran_dim.core.spec import validate_spec
from moran_dim.dims.intermediate import SpectrumResult, c_star_zero_hypothesis, check_spectrum, spectrum

if TYPE_CHECKING:
    from moran_dim.constructions.mobius import MobiusFamily
    from moran_dim.core.schema import RunConfig
    from moran_dim.core.spec import MoranSpec
    from moran_dim.dims.roots import RootBracket
    from moran_dim.dims.windows import WindowPolicy

logger = logging.getLogger(__name__)


class SpectrumCommandMixin:
    """Mixin for the `spectrum` command.

    Requires:
        self.config: RunConfig
        self.console: Console
        self.spec: MoranSpec
        self.bracket: RootBracket
        self.policy: WindowPolicy
        self.mobius_family: MobiusFamily | None
    """

    config: "RunConfig"
    console: Console

    @property
    def spec(self) -> "MoranSpec": ...

    @property
    def bracket(self) -> "RootBracket": ...

    @property
    def policy(self) -> "WindowPolicy": ...

    @property
    def mobius_family(self) -> "MobiusFamily | None": ...

    def compute_spectrum(self) -> SpectrumResult:
        """Spectrum of the configured spec, rejected if any row breaks an invariant.

        Raises:
            VerificationMismatch: If check_spectrum reports a problem
        """
        config = self.config
        validate_spec(self.spec, config.depth)
        result = spectrum(
            self.spec,
            list(config.thetas),
            config.depth,
            self.policy,
            bracket=self.bracket,
            workers=config.workers,
            max_nodes=config.budgets.dp_nodes,
            max_levels=config.budgets.max_levels,
        )
        problems = check_spectrum(result)
        if problems:
            shown = "; ".join(problems[:5])
            more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
            raise VerificationMismatch(f"Spectrum rows break invariants: {shown}{more}")
        return result

    def run_spectrum(self) -> int:
        config = self.config
        result = self.compute_spectrum()
        emit_text(spectrum_csv(result), config.out.csv)

        if config.out.svg is not None:
            write_spectrum_svg(result, config.out.svg, title=self.spec.describe(), family=self.mobius_family)
        if config.out.report is not None:
            w1, _ = result.windows
            hypothesis = c_star_zero_hypothesis(self.spec, (w1.lo, w1.hi)) if len(w1) > 1 else None
            emit_report(spectrum_payload(self.spec, result, hypothesis), config.out.report)

        converged = sum(r.converged for r in result.rows)
        self.console.print(
            f"[bold green]Spectrum:[/] {len(result.rows)} rows, {converged} converged ({escape(result.describe())})"
        )
        if result.gap is not None and not result.gap.holds:
            self.console.print(f"[yellow]Consecutive-gap bound fails at k={result.gap.worst_level}[/]")
        for note in result.notes:
            self.console.print(f"[dim]Note:[/] {escape(note)}")
        return 0
