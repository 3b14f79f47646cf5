"""Finite Boolean algebras whose regions are sets of atoms.

A region is stored as an integer bitset over the atom indices, so the
algebra on ``n`` atoms has exactly ``2**n`` regions with codes
``0 .. 2**n - 1``.  Every region keeps a reference to its algebra and the
binary operations refuse operands from different algebras.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import AlgebraMismatchError

MAX_ATOMS = 5


@dataclass(frozen=True)
class FiniteAlgebra:
    """The power-set algebra of ``n`` labelled atoms."""

    n: int
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"atom count must be a non-negative integer, got {self.n!r}")
        if self.n > MAX_ATOMS:
            raise ValueError(f"at most {MAX_ATOMS} atoms are supported, got {self.n}")
        labels = tuple(self.labels) if self.labels else tuple(f"a{i}" for i in range(self.n))
        if len(labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(labels)}")
        if len(set(labels)) != self.n:
            raise ValueError(f"atom labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def top_code(self) -> int:
        return (1 << self.n) - 1

    @property
    def zero(self) -> "Region":
        return Region(self, 0)

    @property
    def one(self) -> "Region":
        return Region(self, self.top_code)

    def region(self, code: int) -> "Region":
        return Region(self, code)

    def from_labels(self, labels: Iterable[str]) -> "Region":
        code = 0
        for lab in labels:
            try:
                code |= 1 << self.labels.index(lab)
            except ValueError:
                raise KeyError(f"unknown atom label {lab!r}") from None
        return Region(self, code)

    def regions(self) -> Iterator["Region"]:
        """All regions in code order."""
        for code in range(self.size):
            yield Region(self, code)

    def nonzero_regions(self) -> Iterator["Region"]:
        for code in range(1, self.size):
            yield Region(self, code)

    def label_of(self, code: int) -> str:
        if code == 0:
            return "0"
        return "{" + ",".join(lab for i, lab in enumerate(self.labels) if code >> i & 1) + "}"


@dataclass(frozen=True)
class Region:
    """An element of a :class:`FiniteAlgebra`, identified by its atom bitset.

    ``<=`` and ``<`` are the Boolean order (like :class:`frozenset`), so
    sort regions with ``key=lambda r: r.code``.
    """

    algebra: FiniteAlgebra
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.algebra.size:
            raise ValueError(f"region code {self.code} out of range for {self.algebra.n} atoms")

    def _check(self, other: "Region") -> None:
        if not isinstance(other, Region):
            raise TypeError(f"expected a Region, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("regions belong to different algebras")

    def __and__(self, other: "Region") -> "Region":
        return meet(self, other)

    def __or__(self, other: "Region") -> "Region":
        return join(self, other)

    def __invert__(self) -> "Region":
        return complement(self)

    def __sub__(self, other: "Region") -> "Region":
        return meet(self, complement(other))

    def __le__(self, other: "Region") -> bool:
        return leq(self, other)

    def __lt__(self, other: "Region") -> bool:
        return lt(self, other)

    def __ge__(self, other: "Region") -> bool:
        return leq(other, self)

    def __gt__(self, other: "Region") -> bool:
        return lt(other, self)

    def __bool__(self) -> bool:
        return self.code != 0

    def atom_indices(self) -> list[int]:
        return [i for i in range(self.algebra.n) if self.code >> i & 1]

    def __str__(self) -> str:
        return self.algebra.label_of(self.code)

    def __repr__(self) -> str:
        return f"Region({self})"


def meet(a: Region, b: Region) -> Region:
    a._check(b)
    return Region(a.algebra, a.code & b.code)


def join(a: Region, b: Region) -> Region:
    a._check(b)
    return Region(a.algebra, a.code | b.code)


def complement(a: Region) -> Region:
    return Region(a.algebra, a.algebra.top_code & ~a.code)


def meet_all(algebra: FiniteAlgebra, regions: Iterable[Region]) -> Region:
    """Meet of a family; the empty meet is the unit."""
    code = algebra.top_code
    for r in regions:
        if r.algebra != algebra:
            raise AlgebraMismatchError("regions belong to different algebras")
        code &= r.code
    return Region(algebra, code)


def join_all(algebra: FiniteAlgebra, regions: Iterable[Region]) -> Region:
    """Join of a family; the empty join is zero."""
    code = 0
    for r in regions:
        if r.algebra != algebra:
            raise AlgebraMismatchError("regions belong to different algebras")
        code |= r.code
    return Region(algebra, code)


def leq(a: Region, b: Region) -> bool:
    a._check(b)
    return a.code & b.code == a.code


def lt(a: Region, b: Region) -> bool:
    return leq(a, b) and a.code != b.code


def overlap(a: Region, b: Region) -> bool:
    a._check(b)
    return a.code & b.code != 0


def atoms(algebra: FiniteAlgebra) -> list[Region]:
    return [Region(algebra, 1 << i) for i in range(algebra.n)]


def is_atom(a: Region) -> bool:
    # nonzero with a single bit set
    return a.code != 0 and a.code & (a.code - 1) == 0


def down_set(a: Region) -> frozenset[Region]:
    """All parts of ``a``, including zero."""
    out = []
    sub = a.code
    while True:
        out.append(Region(a.algebra, sub))
        if sub == 0:
            break
        sub = (sub - 1) & a.code
    return frozenset(out)


def up_set(a: Region) -> frozenset[Region]:
    alg = a.algebra
    return frozenset(Region(alg, c) for c in range(alg.size) if c & a.code == a.code)


def iter_subcodes(mask: int) -> Iterator[int]:
    """All sub-bitsets of ``mask`` in decreasing order, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def permute_code(code: int, perm: Sequence[int]) -> int:
    """Image of an atom bitset under the atom permutation ``i -> perm[i]``."""
    out = 0
    for i in bits(code):
        out |= 1 << perm[i]
    return out
