# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Two-window limsup/liminf policy and window minima.

This module provides:
- Window / WindowPolicy: tail windows W1, W2 and the convergence rule
- MonotoneWindowMin: streaming minimum over a sliding window (monotone deque)
- sliding_window_min(): band minima for non-decreasing band ends
- BlockedRangeMin / blocked_window_min(): bulk range minima over numpy arrays
"""

import logging
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from moran_dim.core.errors import DomainError
from moran_dim.core.schema import WindowsConfig
from moran_dim.rules.base import CHUNK

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Window:
    """Inclusive level range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 1 <= self.lo <= self.hi:
            raise DomainError(f"Window needs 1 <= lo <= hi, got [{self.lo}, {self.hi}]")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _scaled(depth: int, factor: float) -> int:
    return max(1, math.ceil(round(factor * depth, 9)))


@dataclass(frozen=True)
class WindowPolicy:
    """W1 = [(1 - f) K, K], W2 = [(1 - f)^2 K, (1 - f) K] for depth K.

    An estimate is converged when both its upper and lower values agree
    across the two windows to within threshold.
    """

    tail_fraction: float = 0.5
    threshold: float = 5e-3

    def __post_init__(self) -> None:
        if not 0.0 < self.tail_fraction < 1.0:
            raise DomainError(f"tail_fraction must be in (0, 1), got {self.tail_fraction}")
        if self.threshold <= 0:
            raise DomainError(f"threshold must be positive, got {self.threshold}")

    @classmethod
    def from_config(cls, config: WindowsConfig) -> "WindowPolicy":
        return cls(tail_fraction=config.tail_fraction, threshold=config.threshold)

    def windows(self, depth: int) -> tuple[Window, Window]:
        if depth < 1:
            raise DomainError(f"depth must be >= 1, got {depth}")
        keep = 1.0 - self.tail_fraction
        mid = _scaled(depth, keep)
        return Window(mid, depth), Window(min(_scaled(depth, keep * keep), mid), mid)

    def converged(self, upper: tuple[float, float], lower: tuple[float, float]) -> bool:
        """True iff (W1, W2) pairs of upper and lower estimates agree within threshold."""
        return abs(upper[0] - upper[1]) <= self.threshold and abs(lower[0] - lower[1]) <= self.threshold

    def describe(self, depth: int) -> str:
        w1, w2 = self.windows(depth)
        return f"depth {depth}, W1 {w1}, W2 {w2}, threshold {self.threshold:g}"


class MonotoneWindowMin:
    """Minimum of a sliding window whose ends only move forward.

    Holds (index, value) pairs with strictly increasing values, so the front
    is always the window minimum.
    """

    def __init__(self):
        self._queue: deque[tuple[int, float]] = deque()

    def push(self, index: int, value: float) -> None:
        while self._queue and self._queue[-1][1] >= value:
            self._queue.pop()
        self._queue.append((index, value))

    def pop_expired(self, start: int) -> None:
        while self._queue and self._queue[0][0] < start:
            self._queue.popleft()

    def get_min(self) -> float:
        if not self._queue:
            raise IndexError("get_min on an empty window")
        return self._queue[0][1]

    def __len__(self) -> int:
        return len(self._queue)


def _check_ranges(n: int, starts: np.ndarray, stops: np.ndarray) -> None:
    if starts.shape != stops.shape:
        raise DomainError("starts and stops must have the same length")
    if starts.size and (starts.min() < 0 or stops.max() >= n or np.any(starts > stops)):
        raise DomainError(f"Every range needs 0 <= start <= stop < {n}")


def sliding_window_min(values: np.ndarray, starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
    """min(values[starts[i] : stops[i] + 1]) for every i, in one streaming pass.

    Raises:
        DomainError: If starts or stops decrease, or a range is empty or out of bounds
    """
    values = np.asarray(values, dtype=float)
    starts = np.asarray(starts, dtype=np.int64)
    stops = np.asarray(stops, dtype=np.int64)
    _check_ranges(len(values), starts, stops)
    if np.any(np.diff(starts) < 0) or np.any(np.diff(stops) < 0):
        raise DomainError("sliding_window_min needs non-decreasing starts and stops")

    window = MonotoneWindowMin()
    out = np.empty(len(starts))
    pushed = 0
    for i, (start, stop) in enumerate(zip(starts.tolist(), stops.tolist(), strict=True)):
        while pushed <= stop:
            window.push(pushed, float(values[pushed]))
            pushed += 1
        window.pop_expired(start)
        out[i] = window.get_min()
    return out


class BlockedRangeMin:
    """Range-minimum structure over a fixed array.

    Values are cut into blocks. A query spanning several blocks combines the
    suffix minimum of its first block, the prefix minimum of its last block and
    a sparse-table minimum over the blocks in between. Queries inside a single
    block are scanned directly.
    """

    def __init__(self, values: np.ndarray, block: int = 64):
        if block < 1:
            raise DomainError(f"block must be >= 1, got {block}")
        self.values = np.asarray(values, dtype=float)
        self.block = block
        n = len(self.values)
        blocks = max(1, -(-n // block))
        grid = np.full((blocks, block), np.inf)
        grid.reshape(-1)[:n] = self.values
        self._prefix = np.minimum.accumulate(grid, axis=1).reshape(-1)
        self._suffix = np.minimum.accumulate(grid[:, ::-1], axis=1)[:, ::-1].reshape(-1)
        # _sparse[j][i] = min of block minima i .. i + 2^j - 1
        self._sparse = [grid.min(axis=1)]
        while (1 << len(self._sparse)) <= blocks:
            prev = self._sparse[-1]
            half = 1 << (len(self._sparse) - 1)
            self._sparse.append(np.minimum(prev[:-half], prev[half:]))

    def __len__(self) -> int:
        return len(self.values)

    def query(self, starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
        """min(values[starts[i] : stops[i] + 1]) for every i."""
        starts = np.asarray(starts, dtype=np.int64)
        stops = np.asarray(stops, dtype=np.int64)
        _check_ranges(len(self.values), starts, stops)
        out = np.empty(len(starts))
        for lo in range(0, len(starts), CHUNK):
            part = slice(lo, lo + CHUNK)
            out[part] = self._query(starts[part], stops[part])
        return out

    def _query(self, starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
        first = starts // self.block
        last = stops // self.block
        out = np.empty(len(starts))

        same = first == last
        idx = np.nonzero(same)[0]
        if idx.size:
            best = self.values[starts[idx]]
            cursor = starts[idx] + 1
            active = cursor <= stops[idx]
            while active.any():
                rows = np.nonzero(active)[0]
                best[rows] = np.minimum(best[rows], self.values[cursor[rows]])
                cursor[rows] += 1
                active[rows] = cursor[rows] <= stops[idx][rows]
            out[idx] = best

        idx = np.nonzero(~same)[0]
        if idx.size:
            best = np.minimum(self._suffix[starts[idx]], self._prefix[stops[idx]])
            inner = last[idx] - first[idx] - 1
            level = np.zeros(len(idx), dtype=np.int64)
            has_inner = inner > 0
            level[has_inner] = np.floor(np.log2(inner[has_inner])).astype(np.int64)
            for j in np.unique(level[has_inner]):
                rows = np.nonzero(has_inner & (level == j))[0]
                table = self._sparse[int(j)]
                lo = first[idx][rows] + 1
                hi = last[idx][rows] - (1 << int(j))
                best[rows] = np.minimum(best[rows], np.minimum(table[lo], table[hi]))
            out[idx] = best
        return out


def blocked_window_min(values: np.ndarray, starts: np.ndarray, stops: np.ndarray, block: int = 64) -> np.ndarray:
    """min(values[starts[i] : stops[i] + 1]) for every i, ranges in any order."""
    return BlockedRangeMin(values, block).query(starts, stops)
