# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Command mixins for CommandRunner.

Each mixin implements one moran-dim subcommand:
- DimsCommandMixin: classic dimension estimates
- SpectrumCommandMixin: intermediate spectra, CSV and SVG
- VerifyCommandMixin: oracle-vs-DP comparison
- ConstructCommandMixin: Möbius spec documents and closed-form tables
"""

from moran_dim.cli.mixins.construct_command import ConstructCommandMixin
from moran_dim.cli.mixins.dims_command import DimsCommandMixin
from moran_dim.cli.mixins.spectrum_command import SpectrumCommandMixin
from moran_dim.cli.mixins.verify_command import VerifyCommandMixin

__all__ = [
    "ConstructCommandMixin",
    "DimsCommandMixin",
    "SpectrumCommandMixin",
    "VerifyCommandMixin",
]
