# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
moran-dim - classical and intermediate dimension spectra of Moran sets.

Key modules:
- core.spec: MoranSpec, structure validation and product specs
- core.config: Run config loading and CLI overrides
- rules: Level rules (explicit, periodic, block schedules, formulas, products)
- dims.classic: s_{k,k'}, s_k and the Hausdorff / box / Assouad estimates
- dims.intermediate: Upper and lower intermediate spectra
- dims.cutsets: Cut-set DP for non-homogeneous specs
- oracle: Exhaustive enumeration used to verify the DP
- constructions: Möbius family and named presets
- cli.main: The moran-dim command

Usage:
    from moran_dim import preset, spectrum

    result = spectrum(preset("cantor"), [0.0, 0.5, 1.0], depth=10_000)
"""

__version__ = "0.1.0"

from .constructions import MobiusFamily, build_mobius_spec, closed_form_spectrum, list_presets, preset
from .core.config import load_config, parse_config
from .core.errors import (
    ConfigError,
    DomainError,
    MoranDimError,
    ResourceError,
    VerificationMismatch,
)
from .core.schema import RunConfig
from .core.spec import MoranSpec, product_spec, validate_spec
from .dims import (
    AdmissibleBand,
    WindowPolicy,
    classic_dim_estimates,
    s_delta_theta_general,
    solve_s_kk,
    spectrum,
)
from .logging_utils import setup_logging

__all__ = [
    # Version
    "__version__",
    # Logging
    "setup_logging",
    # Config
    "RunConfig",
    "load_config",
    "parse_config",
    # Errors
    "MoranDimError",
    "DomainError",
    "ConfigError",
    "ResourceError",
    "VerificationMismatch",
    # Specs
    "MoranSpec",
    "product_spec",
    "validate_spec",
    # Dimensions
    "AdmissibleBand",
    "WindowPolicy",
    "classic_dim_estimates",
    "s_delta_theta_general",
    "solve_s_kk",
    "spectrum",
    # Constructions
    "MobiusFamily",
    "build_mobius_spec",
    "closed_form_spectrum",
    "list_presets",
    "preset",
]
