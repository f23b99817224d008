# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Logging utilities for moran-dim."""

import logging
import os
import sys

LOG_ENV_VAR = "MORAN_DIM_LOG"

_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def resolve_log_level(default: int = logging.INFO) -> int:
    """Read the log level from MORAN_DIM_LOG (error, info or debug)."""
    raw = os.environ.get(LOG_ENV_VAR)
    if not raw:
        return default
    level = _LEVELS.get(raw.strip().lower())
    if level is None:
        logging.getLogger(__name__).warning("Ignoring %s=%r, expected one of %s", LOG_ENV_VAR, raw, ", ".join(_LEVELS))
        return default
    return level


def setup_logging(level: int = logging.INFO) -> None:
    """Configure logging for moran-dim.

    Logs go to stderr; stdout is reserved for CSV and JSON output.
    """
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
        force=True,
    )
