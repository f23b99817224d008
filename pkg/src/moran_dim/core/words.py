# SPDX-FileCopyrightText: Copyright (c) 2025 NVIDIA CORPORATION & AFFILIATES. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Symbolic words, cut sets and the cut-set check.

A word u = u_1...u_k addresses the basic set J_u; its log-diameter is the sum
of log c_{i,u_i} along the path. A cut set is a finite prefix-free family of
words that meets every infinite branch exactly once.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from moran_dim.core.errors import DomainError
from moran_dim.core.ratios import MAX_LEVEL
from moran_dim.core.spec import MoranSpec

Path = tuple[int, ...]


@dataclass(frozen=True)
class Word:
    """A finite address with its cached log-diameter.

    Equality and hashing use the path only.
    """

    path: Path
    log_diam: float = field(default=0.0, compare=False)

    @property
    def level(self) -> int:
        return len(self.path)

    @property
    def parent(self) -> Path:
        return self.path[:-1]

    def is_prefix_of(self, other: "Word") -> bool:
        """True iff self is a proper prefix of other."""
        return self.level < other.level and other.path[: self.level] == self.path

    def __str__(self) -> str:
        if not self.path:
            return "∅"
        sep = "" if all(u < 10 for u in self.path) else "."
        return sep.join(str(u) for u in self.path)


EMPTY_WORD = Word(())


def log_diameter(spec: MoranSpec, word: Word | Sequence[int]) -> float:
    """log|J_u| = sum of log c_{i,u_i} for i <= |u| (0 for the empty word).

    Raises:
        DomainError: If some index is out of range at its level
    """
    path = word.path if isinstance(word, Word) else tuple(word)
    if len(path) > MAX_LEVEL:
        raise DomainError(f"Word length {len(path)} exceeds the supported maximum 2^31")
    total = 0.0
    for i, u in enumerate(path, start=1):
        vector = spec.level(i)
        if not 1 <= u <= vector.n:
            raise DomainError(f"Index {u} out of range at level {i} (n={vector.n})")
        total += vector.log_ratio(u)
    return total


def make_word(spec: MoranSpec, path: Sequence[int]) -> Word:
    """Build a validated Word with its log-diameter."""
    path = tuple(int(u) for u in path)
    return Word(path=path, log_diam=log_diameter(spec, path))


def child(spec: MoranSpec, word: Word, j: int) -> Word:
    """The word uj, with log_diam extended by log c_{|u|+1, j}."""
    vector = spec.level(word.level + 1)
    if not 1 <= j <= vector.n:
        raise DomainError(f"Index {j} out of range at level {word.level + 1} (n={vector.n})")
    return Word(path=(*word.path, j), log_diam=word.log_diam + vector.log_ratio(j))


def children(spec: MoranSpec, word: Word) -> list[Word]:
    """All children of a word, in index order."""
    vector = spec.level(word.level + 1)
    return [Word(path=(*word.path, j), log_diam=word.log_diam + log_c) for j, log_c in vector.children()]


@dataclass(frozen=True)
class CutSet:
    """A finite set of words with cached extreme levels."""

    words: frozenset[Word]

    def __post_init__(self) -> None:
        if not self.words:
            raise DomainError("A cut set needs at least one word")

    @classmethod
    def of(cls, words: Iterable[Word]) -> "CutSet":
        return cls(frozenset(words))

    @cached_property
    def min_level(self) -> int:
        """L_M, the shallowest member level."""
        return min(w.level for w in self.words)

    @cached_property
    def max_level(self) -> int:
        """K_M, the deepest member level."""
        return max(w.level for w in self.words)

    @property
    def log_diams(self) -> list[float]:
        return [w.log_diam for w in self.sorted()]

    def sorted(self) -> list[Word]:
        return sorted(self.words, key=lambda w: w.path)

    def __len__(self) -> int:
        return len(self.words)

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.sorted()) + "}"


@dataclass(frozen=True)
class CutSetCheck:
    """Outcome of is_cut_set with a witness on failure.

    Attributes:
        ok: True iff the words are prefix-free and covering
        overlap: (prefix, extension) pair breaking prefix-freeness
        uncovered: Path of a branch prefix no member covers
    """

    ok: bool
    overlap: tuple[Word, Word] | None = None
    uncovered: Path | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "cut set"
        if self.overlap is not None:
            return f"overlap: {self.overlap[0]} is a prefix of {self.overlap[1]}"
        return f"uncovered branch: {Word(self.uncovered or ())}"


def is_cut_set(spec: MoranSpec, words: Iterable[Word]) -> CutSetCheck:
    """Check that words are prefix-free and cover every branch.

    Prefix-freeness is checked first; the overlap witness is the pair with the
    shortest extension in path order. Coverage is checked depth-first in
    child-index order and reports the first uncovered prefix.
    """
    members = {w.path: w for w in words}
    for path in sorted(members, key=lambda p: (len(p), p)):
        for cut in range(len(path)):
            prefix = path[:cut]
            if prefix in members:
                return CutSetCheck(ok=False, overlap=(members[prefix], members[path]))

    proper_prefixes = {path[:cut] for path in members for cut in range(len(path))}

    def uncovered_below(prefix: Path) -> Path | None:
        if prefix in members:
            return None
        if prefix not in proper_prefixes:
            return prefix
        n = spec.level(len(prefix) + 1).n
        for j in range(1, n + 1):
            missing = uncovered_below((*prefix, j))
            if missing is not None:
                return missing
        return None

    missing = uncovered_below(())
    if missing is not None:
        return CutSetCheck(ok=False, uncovered=missing)
    return CutSetCheck(ok=True)
