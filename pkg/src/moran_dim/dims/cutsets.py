# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Minimum diameter sums over admissible cut sets.

A cut set M is admissible for the band (δ, δ^(1/θ)) when every member u has
|J_u| <= δ and δ^(1/θ) < |J_u*|. F(s) = min over admissible M of the sum of
|J_u|^s, and s_{δ,θ} is the root of F(s) = 1.

The truncated tree is walked once, merging nodes of equal level and equal
log-diameter (their subtrees coincide). F(s) is then a min-plus recursion
from the leaves back to the root.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from moran_dim.core.errors import DomainError, ResourceError
from moran_dim.core.spec import MoranSpec
from moran_dim.dims.roots import DEFAULT_BRACKET, RootBracket, solve_decreasing

logger = logging.getLogger(__name__)

# Relative slack on band comparisons: ties count as |J_u| <= δ and as not above δ^(1/θ)
BAND_RTOL = 1e-12

# Log-diameters equal to this many decimals are merged into one tree node
MERGE_DECIMALS = 10

DEFAULT_DP_NODES = 5_000_000


@dataclass(frozen=True)
class AdmissibleBand:
    """The scales (δ, δ^(1/θ)) in log form.

    Attributes:
        log_delta_cov: log δ, the largest admissible member diameter
        log_delta_fine: log δ^(1/θ); every member's parent must lie strictly above it
        theta: θ in (0, 1]
    """

    log_delta_cov: float
    log_delta_fine: float
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise DomainError(f"Band θ must be in (0, 1], got {self.theta}")
        if not self.log_delta_cov < 0:
            raise DomainError(f"Band needs δ < 1, got log δ = {self.log_delta_cov}")
        if not self.log_delta_fine <= self.log_delta_cov:
            raise DomainError(
                f"Band needs δ^(1/θ) <= δ, got log scales {self.log_delta_fine} > {self.log_delta_cov}"
            )

    @classmethod
    def from_scale(cls, log_delta: float, theta: float) -> "AdmissibleBand":
        if not 0.0 < theta <= 1.0:
            raise DomainError(f"Band θ must be in (0, 1], got {theta}")
        return cls(log_delta_cov=log_delta, log_delta_fine=log_delta / theta, theta=theta)

    @classmethod
    def from_fine(cls, log_fine: float, theta: float) -> "AdmissibleBand":
        return cls(log_delta_cov=theta * log_fine, log_delta_fine=log_fine, theta=theta)

    def covers(self, log_diam: np.ndarray | float) -> np.ndarray | bool:
        """|J_u| <= δ."""
        return log_diam <= self.log_delta_cov * (1.0 - BAND_RTOL)

    def above_fine(self, log_diam: np.ndarray | float) -> np.ndarray | bool:
        """δ^(1/θ) < |J_u|."""
        return log_diam > self.log_delta_fine * (1.0 - BAND_RTOL)

    def describe(self) -> str:
        return f"log δ = {self.log_delta_cov:.6g}, log δ^(1/θ) = {self.log_delta_fine:.6g}, θ = {self.theta:g}"


@dataclass(frozen=True)
class _Layer:
    log_diams: np.ndarray
    select: np.ndarray
    # child[i, r] indexes the next layer's node reached through ratio run r, -1 when i does not recurse
    child: np.ndarray | None
    log_counts: np.ndarray | None


class CutSetLattice:
    """The band-truncated tree of a spec with equal nodes merged per level.

    Node i of level k may be SELECTED when |J_u| <= δ (its parent is above the
    fine scale, or it would not have been reached) and may RECURSE when it is
    itself above the fine scale. The root is never selected.

    Raises:
        ResourceError: If the merged tree holds more than max_nodes nodes
        DomainError: If the rule stops before every branch reaches the fine scale
    """

    def __init__(self, spec: MoranSpec, band: AdmissibleBand, max_nodes: int = DEFAULT_DP_NODES):
        self.spec = spec
        self.band = band
        self.layers: list[_Layer] = []
        self.node_count = 1

        log_diams = np.zeros(1)
        k = 0
        while True:
            recurse = np.asarray(band.above_fine(log_diams))
            select = np.asarray(band.covers(log_diams)) if k > 0 else np.zeros(1, dtype=bool)
            if not recurse.any():
                self.layers.append(_Layer(log_diams, select, None, None))
                break
            vector = spec.level(k + 1)
            candidates = log_diams[recurse][:, None] + np.asarray(vector.log_ratios)[None, :]
            flat = candidates.reshape(-1)
            _, first, inverse = np.unique(np.round(flat, MERGE_DECIMALS), return_index=True, return_inverse=True)
            child = np.full((len(log_diams), len(vector.log_ratios)), -1, dtype=np.int64)
            child[recurse] = inverse.reshape(candidates.shape)
            self.layers.append(_Layer(log_diams, select, child, vector.log_counts))

            self.node_count += len(first)
            if self.node_count > max_nodes:
                raise ResourceError(
                    f"Cut-set tree for {band.describe()} exceeds the node budget of {max_nodes} at level {k + 1}; "
                    "use the homogeneous path or a narrower band"
                )
            log_diams = flat[first]
            k += 1
        logger.debug("Cut-set lattice: %d levels, %d nodes (%s)", self.depth, self.node_count, band.describe())

    @property
    def depth(self) -> int:
        """Deepest level reached by the truncated tree."""
        return len(self.layers) - 1

    def log_min_sum(self, s: float) -> float:
        """log F(s), inf when no admissible cut set exists."""
        values: np.ndarray | None = None
        with np.errstate(over="ignore", invalid="ignore"):
            for layer in reversed(self.layers):
                best = np.where(layer.select, s * layer.log_diams, np.inf)
                if layer.child is not None and values is not None:
                    rows = layer.child[:, 0] >= 0
                    terms = values[layer.child[rows]] + layer.log_counts[None, :]
                    recursed = np.full(len(best), np.inf)
                    recursed[rows] = logsumexp(terms, axis=1)
                    best = np.minimum(best, recursed)
                values = best
        assert values is not None
        return float(values[0])

    def root(self, bracket: RootBracket = DEFAULT_BRACKET) -> float:
        """s_{δ,θ}: the root of log F(s) = 0 on [0, d].

        Raises:
            DomainError: If no admissible cut set exists
        """
        if not np.isfinite(self.log_min_sum(0.0)):
            raise DomainError(f"No admissible cut set for {self.band.describe()}")
        return solve_decreasing(self.log_min_sum, bracket, self.spec.ambient_dim)


def min_cutset_sum(spec: MoranSpec, band: AdmissibleBand, s: float, max_nodes: int = DEFAULT_DP_NODES) -> float:
    """log of the minimum, over admissible cut sets, of the sum of |J_u|^s."""
    if not 0 <= s <= spec.ambient_dim:
        raise DomainError(f"Exponent must be in [0, {spec.ambient_dim}], got {s}")
    return CutSetLattice(spec, band, max_nodes).log_min_sum(s)


def s_delta_theta_general(
    spec: MoranSpec,
    band: AdmissibleBand,
    bracket: RootBracket = DEFAULT_BRACKET,
    max_nodes: int = DEFAULT_DP_NODES,
) -> float:
    """s_{δ,θ} for any spec, by bisection on the cut-set minimum.

    Raises:
        ResourceError: If the truncated tree exceeds max_nodes
    """
    return CutSetLattice(spec, band, max_nodes).root(bracket)
