# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
moran-dim command-line entry point.

Usage:
    moran-dim dims --config recipes/cantor/dims.yaml
    moran-dim spectrum --config recipes/cantor/spectrum.yaml --thetas 0:1:0.1 --out cantor.csv
    moran-dim verify --config recipes/verify/random.yaml --seed 7
    moran-dim construct mobius --config recipes/mobius/construct.yaml --out mobius.spec.json
"""

import argparse
import logging
import sys
from pathlib import Path

from rich.console import Console
from rich.markup import escape

from moran_dim.cli.runner import run_command
from moran_dim.core.config import apply_overrides, load_config
from moran_dim.core.errors import MoranDimError
from moran_dim.logging_utils import resolve_log_level, setup_logging

logger = logging.getLogger(__name__)

console = Console(stderr=True)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moran-dim",
        description="moran-dim - dimension spectra of Moran sets",
        epilog="""Examples:
  moran-dim dims --config recipes/cantor/dims.yaml
  moran-dim spectrum --config recipes/cantor/spectrum.yaml --out cantor.csv
  moran-dim spectrum --config recipes/mobius/spectrum.yaml --workers 8
  moran-dim verify --config recipes/verify/random.yaml --seed 42
  moran-dim construct mobius --config recipes/mobius/construct.yaml
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common_args(p):
        p.add_argument("-c", "--config", type=Path, required=True, help="JSON or YAML run config")
        p.add_argument("--depth", type=_positive_int, help="Deepest level K (overrides config)")
        p.add_argument("--thetas", type=str, help="θ-grid as lo:hi:step (overrides config)")
        p.add_argument("-o", "--out", type=str, help="Primary output path (CSV, report or spec document)")
        p.add_argument("--workers", type=_positive_int, help="Threads evaluating θ values")
        p.add_argument("--seed", type=int, help="Seed for random instances")
        p.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    add_common_args(subparsers.add_parser("dims", help="Hausdorff, box/packing and Assouad estimates"))
    add_common_args(subparsers.add_parser("spectrum", help="Upper and lower intermediate spectra"))
    add_common_args(subparsers.add_parser("verify", help="Cut-set DP against exhaustive enumeration"))
    construct_parser = subparsers.add_parser("construct", help="Build a Möbius construction")
    construct_parser.add_argument("family", nargs="?", default="mobius", choices=["mobius"], help="Construction")
    add_common_args(construct_parser)
    return parser


def run(args: argparse.Namespace) -> int:
    """Load the config, apply flag overrides and run the command.

    Raises:
        MoranDimError: On any domain, resource or verification failure
    """
    config = load_config(args.config)
    config = apply_overrides(
        config,
        command=args.command,
        depth=args.depth,
        thetas=args.thetas,
        out=args.out,
        workers=args.workers,
        seed=args.seed,
    )
    return run_command(config, console=console, base_dir=args.config.parent)


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else resolve_log_level())

    try:
        exit_code = run(args)
    except MoranDimError as e:
        console.print(f"[bold red]Error:[/] {escape(str(e))}")
        logger.debug("Full traceback:", exc_info=True)
        sys.exit(e.exit_code)
    except Exception as e:
        console.print(f"[bold red]Error:[/] {escape(str(e))}")
        logger.debug("Full traceback:", exc_info=True)
        sys.exit(1)
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
