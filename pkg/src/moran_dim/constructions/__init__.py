# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Named constructions.

- mobius: the Möbius family, its block schedule and closed-form spectrum
- presets: registry of named specs
- sources: resolving configured spec sources and spec documents
"""

from .mobius import ClosedFormRow, MobiusFamily, build_mobius_spec, closed_form_spectrum
from .presets import Preset, get_preset, list_presets, preset, register_preset
from .sources import load_spec_document, resolve_mobius, resolve_spec, spec_document, write_spec_document

__all__ = [
    # Möbius family
    "ClosedFormRow",
    "MobiusFamily",
    "build_mobius_spec",
    "closed_form_spectrum",
    # Presets
    "Preset",
    "get_preset",
    "list_presets",
    "preset",
    "register_preset",
    # Sources
    "load_spec_document",
    "resolve_mobius",
    "resolve_spec",
    "spec_document",
    "write_spec_document",
]
