"""Vertex sets as Python int bitmasks.

Bit ``i`` of a mask is set iff vertex ``i`` belongs to the set.  Hot loops work
on raw ints; :class:`VertexSet` is the typed wrapper used at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Index of the lowest set bit; -1 for the empty mask."""
    return (mask & -mask).bit_length() - 1


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, starting from 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class VertexSet:
    """Fixed-capacity set of vertex indices ``0..n-1``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} exceed capacity {self.n}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        return cls(n, mask_of(vertices))

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, full_mask(n))

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, full_mask(self.n) & ~self.bits)

    def _check(self, other: "VertexSet") -> None:
        if other.n != self.n:
            raise ValueError(f"capacity mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits ^ other.bits)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def to_list(self) -> list[int]:
        return list(bits_of(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {self.to_list()})"


SetLike = Union[VertexSet, int, Iterable[int]]


def as_mask(x: SetLike) -> int:
    """Accept a VertexSet, a raw mask, or an iterable of vertex indices."""
    if isinstance(x, VertexSet):
        return x.bits
    if isinstance(x, int):
        if x < 0:
            raise ValueError("negative mask")
        return x
    return mask_of(x)
