# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Seeded random non-homogeneous specs and bands for oracle sweeps.

Specs have depth 2..max_depth, n_k in {2, 3} and ratios drawn from
RANDOM_RATIOS with sum c_{k,j} <= 1 (d = 1). Bands pick θ in [0.3, 1] and a
fine scale between log M_D and log M_D / 2, so every branch ends by depth D.
"""

import logging
from dataclasses import dataclass

import numpy as np

from moran_dim.core.errors import DomainError
from moran_dim.core.spec import MoranSpec, log_max_prefix
from moran_dim.dims.cutsets import AdmissibleBand
from moran_dim.oracle.enumeration import count_admissible_cut_sets
from moran_dim.rules.explicit import ExplicitRule

logger = logging.getLogger(__name__)

RANDOM_RATIOS = (0.2, 0.25, 1 / 3, 0.4)
THETA_RANGE = (0.3, 1.0)

# Redraws allowed per instance before giving up on the cut-set cap
MAX_REDRAWS = 1000


@dataclass(frozen=True)
class RandomInstance:
    """One oracle instance.

    Attributes:
        index: Position in the sweep
        seed: Seed of the sweep generator
        spec: Random non-homogeneous spec
        band: Random admissible band
        depth: Number of levels in the spec
        cut_sets: Closed-form admissible cut-set count
        redraws: Draws rejected for exceeding the cut-set cap
    """

    index: int
    seed: int
    spec: MoranSpec
    band: AdmissibleBand
    depth: int
    cut_sets: int
    redraws: int = 0


def _random_level(rng: np.random.Generator) -> list[float]:
    while True:
        n = int(rng.integers(2, 4))
        ratios = [float(r) for r in rng.choice(RANDOM_RATIOS, size=n)]
        if sum(ratios) <= 1.0:
            return ratios


def random_spec(rng: np.random.Generator, max_depth: int = 6) -> MoranSpec:
    """Random explicit spec with at least one level of unequal ratios."""
    if max_depth < 2:
        raise DomainError(f"max_depth must be >= 2, got {max_depth}")
    depth = int(rng.integers(2, max_depth + 1))
    while True:
        levels = [_random_level(rng) for _ in range(depth)]
        if any(len(set(ratios)) > 1 for ratios in levels):
            return MoranSpec(ambient_dim=1, rule=ExplicitRule(levels=levels, tail="none"), name="random")


def random_band(rng: np.random.Generator, spec: MoranSpec) -> AdmissibleBand:
    depth = spec.rule.max_level
    assert depth is not None
    log_m = log_max_prefix(spec, depth)
    theta = float(rng.uniform(*THETA_RANGE))
    return AdmissibleBand.from_fine(float(rng.uniform(log_m, log_m / 2)), theta)


def generate_instances(seed: int, count: int, max_depth: int = 6, max_cut_sets: int = 2_000) -> list[RandomInstance]:
    """count instances from numpy default_rng(seed).

    Draws whose admissible cut-set count exceeds max_cut_sets are redrawn.
    """
    rng = np.random.default_rng(seed)
    instances = []
    for index in range(count):
        for redraws in range(MAX_REDRAWS + 1):
            spec = random_spec(rng, max_depth)
            band = random_band(rng, spec)
            total = count_admissible_cut_sets(spec, band)
            if total <= max_cut_sets:
                break
        else:
            raise DomainError(f"No instance within {max_cut_sets} cut sets after {MAX_REDRAWS} redraws")
        depth = spec.rule.max_level
        assert depth is not None
        instances.append(RandomInstance(index, seed, spec, band, depth, total, redraws))
    logger.debug("Generated %d instances from seed %d", count, seed)
    return instances
