"""NodeSet: an immutable set of node indices over a fixed universe.

Backed by a single 64-bit mask, which keeps every set operation in the quorum
machinery a handful of word instructions. The engine is therefore limited to
universes of at most 64 nodes (the experiments run at n = 16).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptyUniverse, IndexOutOfRange, UniverseMismatch, UniverseTooLarge

MAX_UNIVERSE = 64


def check_universe_size(n: int) -> None:
    if n == 0:
        raise EmptyUniverse("universe has no nodes")
    if n < 0:
        raise EmptyUniverse(f"invalid universe size {n}")
    if n > MAX_UNIVERSE:
        raise UniverseTooLarge(f"bitset engine supports n <= {MAX_UNIVERSE}, got {n}")


@dataclass(frozen=True)
class NodeSet:
    """Set of node indices in [0, universe_size), stored as a bitmask."""

    mask: int
    universe_size: int

    def __post_init__(self):
        check_universe_size(self.universe_size)
        if self.mask < 0 or self.mask >> self.universe_size:
            raise IndexOutOfRange(None, self.mask.bit_length() - 1)

    @classmethod
    def of(cls, members: Iterable[int], universe_size: int, owner: int | None = None) -> "NodeSet":
        """Build from an iterable of indices; `owner` only labels errors."""
        check_universe_size(universe_size)
        mask = 0
        for i in members:
            if not 0 <= i < universe_size:
                raise IndexOutOfRange(owner, i)
            mask |= 1 << i
        return cls(mask, universe_size)

    @classmethod
    def full(cls, universe_size: int) -> "NodeSet":
        check_universe_size(universe_size)
        return cls((1 << universe_size) - 1, universe_size)

    @classmethod
    def empty(cls, universe_size: int) -> "NodeSet":
        return cls(0, universe_size)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.universe_size and bool(self.mask >> i & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check(self, other: "NodeSet") -> None:
        if self.universe_size != other.universe_size:
            raise UniverseMismatch(
                f"universes differ: {self.universe_size} vs {other.universe_size}"
            )

    def union(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.mask | other.mask, self.universe_size)

    def intersection(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.mask & other.mask, self.universe_size)

    def difference(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.mask & ~other.mask, self.universe_size)

    def issubset(self, other: "NodeSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "NodeSet") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def complement(self) -> "NodeSet":
        return NodeSet(~self.mask & ((1 << self.universe_size) - 1), self.universe_size)

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"NodeSet({self.to_list()}, n={self.universe_size})"
