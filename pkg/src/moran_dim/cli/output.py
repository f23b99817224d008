# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Result emission: CSV, SVG and JSON.

CSV text is built in θ order with LF line endings and values formatted to
12 significant digits, so identical results give identical bytes. Files are
written as bytes to keep line endings fixed on every platform.
"""

import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel

from moran_dim.constructions.mobius import ClosedFormRow, MobiusFamily
from moran_dim.dims.intermediate import SpectrumResult

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ("theta", "upper", "lower", "upper_window2", "lower_window2", "converged")
CLOSED_FORM_HEADER = ("theta", "value", "exponent_form")

# Closed-form overlay sample count on the SVG chart
OVERLAY_POINTS = 201


def format_value(x: float | None) -> str:
    if x is None:
        return ""
    return format(x, ".12g")


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def spectrum_csv(result: SpectrumResult) -> str:
    rows = [
        (
            format_value(r.theta),
            format_value(r.upper),
            format_value(r.lower),
            format_value(r.upper_window2),
            format_value(r.lower_window2),
            "1" if r.converged else "0",
        )
        for r in result.rows
    ]
    return _csv(SPECTRUM_HEADER, rows)


def closed_form_csv(rows: Sequence[ClosedFormRow]) -> str:
    return _csv(
        CLOSED_FORM_HEADER,
        [(format_value(r.theta), format_value(r.value), format_value(r.exponent_form)) for r in rows],
    )


def emit_text(text: str, path: str | Path | None) -> Path | None:
    """Write text to path, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))
    logger.info("Wrote %s", path)
    return path


def report_json(payload: BaseModel) -> str:
    return json.dumps(payload.model_dump(mode="json", exclude_none=True), indent=2) + "\n"


def emit_report(payload: BaseModel, path: str | Path | None) -> Path | None:
    return emit_text(report_json(payload), path)


def write_spectrum_svg(
    result: SpectrumResult, path: str | Path, title: str, family: MobiusFamily | None = None
) -> Path:
    """Static chart of the upper and lower spectra against θ.

    When family is set its closed form is drawn over the estimates.
    """
    import numpy as np
    from matplotlib.figure import Figure

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.add_subplot()
    thetas = result.thetas
    ax.plot(thetas, result.upper, marker="o", markersize=3, label="upper")
    ax.plot(thetas, result.lower, marker="s", markersize=3, label="lower")
    if family is not None:
        grid = np.linspace(0.0, 1.0, OVERLAY_POINTS)
        ax.plot(grid, [family.closed_form(float(t)) for t in grid], linestyle="--", color="black", label="closed form")
    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("θ")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    # No date metadata and a fixed hash salt keep the file stable across runs
    with _svg_hashsalt("moran-dim"):
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.info("Wrote %s", path)
    return path


def _svg_hashsalt(salt: str):
    import matplotlib

    return matplotlib.rc_context({"svg.hashsalt": salt})
