"""Brute-force reference implementations, written from the definitions.

Regions are frozensets of atom indices and a contact is an arbitrary
Python predicate on pairs of them.  Nothing here imports the library, so
agreement with it is evidence rather than tautology.  Conversion helpers
at the bottom translate between the two worlds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations, permutations, product
from typing import Callable, Iterable

Reg = frozenset


def powerset(items: Iterable) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


@dataclass(frozen=True)
class SetModel:
    n: int
    contact: Callable[[Reg, Reg], bool]

    @property
    def top(self) -> Reg:
        return frozenset(range(self.n))

    @property
    def regions(self) -> list[Reg]:
        return powerset(range(self.n))

    def c(self, x: Reg, y: Reg) -> bool:
        return self.contact(x, y)

    def ll(self, x: Reg, y: Reg) -> bool:
        return not self.contact(x, self.top - y)


def overlap_model(n: int) -> SetModel:
    return SetModel(n, lambda x, y: bool(x & y))


def graph_model(n: int, edges: Iterable[tuple[int, int]]) -> SetModel:
    adj = {(i, i) for i in range(n)}
    for i, j in edges:
        adj |= {(i, j), (j, i)}
    return SetModel(n, lambda x, y: any((a, b) in adj for a in x for b in y))


def d_model(n: int, d: Reg) -> SetModel:
    return SetModel(n, lambda x, y: bool(x & y) or (bool(x & d) and bool(y & d)))


def table_model(n: int, pairs: set) -> SetModel:
    pairs = frozenset(pairs)
    return SetModel(n, lambda x, y: (x, y) in pairs)


# -- axioms, read straight off their statements ----------------------------------
def axioms(m: SetModel) -> dict[str, bool]:
    R, O, T = m.regions, frozenset(), m.top
    nz = [x for x in R if x]
    out = {
        "C0": all(not m.c(O, x) for x in R),
        "C1": all(m.c(x, y) for x in nz for y in R if x <= y),
        "C2": all(m.c(x, y) == m.c(y, x) for x in R for y in R),
        "C3": all(m.c(z, y) for x in R for y in R for z in R if x <= y and m.c(z, x)),
        "C4": all(m.c(x, y) or m.c(x, z) for x in R for y in R for z in R if m.c(x, y | z)),
        "C5": all(any(m.ll(y, x) for y in nz) for x in nz),
        "C6": all(m.c(x, T - x) for x in R if x not in (O, T)),
        "IA": all(any(m.ll(x, z) and m.ll(z, y) for z in R) for x in R for y in R if m.ll(x, y)),
        "EXT": all(
            x == y for x in R for y in R if all(m.c(z, x) == m.c(z, y) for z in R)
        ),
        "DISC": all(any(not m.c(x, y) for y in nz) for x in R if x != T),
    }
    return out


def gia(m: SetModel) -> bool:
    """Every family Y of regions all well inside of by x has a common interpolant."""
    R = m.regions
    for x in R:
        above = [y for y in R if m.ll(x, y)]
        for Y in powerset(above):
            if not any(m.ll(x, z) and all(m.ll(z, y) for y in Y) for z in R):
                return False
    return True


def meet_form(m: SetModel) -> bool:
    R, T = m.regions, m.top
    for x in R:
        above = [y for y in R if m.ll(x, y)]
        for J in powerset(above):
            meet = T
            for y in J:
                meet = meet & y
            if not m.ll(x, meet):
                return False
    return True


FACTS = {
    "fact1": lambda m, x, y, z: not m.ll(x, y) or x <= y,
    "fact2": lambda m, x, y, z: not (m.ll(x, y) and m.ll(y, x)) or x == y,
    "fact3": lambda m, x, y, z: not (m.ll(x, y) and y <= z) or m.ll(x, z),
    "fact4": lambda m, x, y, z: not (x <= y and m.ll(y, z)) or m.ll(x, z),
    "fact5": lambda m, x, y, z: not (m.ll(x, y) and m.ll(y, z)) or m.ll(x, z),
    "fact6": lambda m, x, y, z: m.ll(x, y) == m.ll(m.top - y, m.top - x),
}


def fact_failures(m: SetModel, name: str) -> list[tuple]:
    R = m.regions
    return [(x, y, z) for x, y, z in product(R, R, R) if not FACTS[name](m, x, y, z)]


# -- G-representatives -----------------------------------------------------------
def is_grep(m: SetModel, Q: frozenset) -> bool:
    if not Q or frozenset() in Q:
        return False
    if not all(u == v or m.ll(u, v) or m.ll(v, u) for u in Q for v in Q):
        return False
    if not all(any(m.ll(v, u) for v in Q) for u in Q):
        return False
    touching = [x for x in m.regions if all(u & x for u in Q)]
    return all(m.c(x, y) for x in touching for y in touching)


def all_greps(m: SetModel) -> list[frozenset]:
    nz = [x for x in m.regions if x]
    return [frozenset(Q) for Q in powerset(nz) if is_grep(m, frozenset(Q))]


def covers(X: Iterable[Reg], Y: Iterable[Reg]) -> bool:
    return all(any(x <= y for x in X) for y in Y)


def up(m: SetModel, Q: frozenset) -> frozenset:
    return frozenset(x for x in m.regions if any(q <= x for q in Q))


# -- isomorphism classes -----------------------------------------------------------
def relabel(s: Reg, perm: tuple) -> Reg:
    return frozenset(perm[i] for i in s)


def iso_key(n: int, pairs: frozenset) -> frozenset:
    """A canonical key for a set of region pairs: min over atom relabellings."""
    keys = []
    for perm in permutations(range(n)):
        keys.append(tuple(sorted(
            (tuple(sorted(relabel(x, perm))), tuple(sorted(relabel(y, perm)))) for x, y in pairs
        )))
    return min(keys)


def bwca_classes_bruteforce(n: int) -> set:
    """All C0-C3 relations on 2**n regions up to relabelling, by listing symmetric relations.

    For n <= 1 every symmetric relation is tried; for larger n the
    relation is overlap plus any set of unordered disjoint pairs (which
    C1-C3 force) and C3 is checked afterwards.
    """
    R = powerset(range(n))
    if n <= 2:
        slots = [(x, y) for i, x in enumerate(R) for y in R[i:]]
        base: set = set()
    else:
        slots = [(x, y) for i, x in enumerate(R) for y in R[i + 1:] if x and y and not x & y]
        base = {(x, y) for x in R for y in R if x & y}
    out = set()
    for chosen in powerset(range(len(slots))):
        pairs = set(base)
        for i in chosen:
            x, y = slots[i]
            pairs |= {(x, y), (y, x)}
        m = table_model(n, pairs)
        ax = axioms_bwca(m)
        if ax:
            out.add(iso_key(n, frozenset(pairs)))
    return out


def axioms_bwca(m: SetModel) -> bool:
    R, O = m.regions, frozenset()
    return (
        all(not m.c(O, x) for x in R)
        and all(m.c(x, y) for x in R if x for y in R if x <= y)
        and all(m.c(x, y) == m.c(y, x) for x in R for y in R)
        and all(m.c(z, y) for x in R for y in R for z in R if x <= y and m.c(z, x))
    )


def graph_classes(n: int) -> int:
    slots = list(combinations(range(n), 2))
    seen = set()
    for edges in powerset(slots):
        best = min(
            tuple(sorted(tuple(sorted((p[i], p[j]))) for i, j in edges)) for p in permutations(range(n))
        )
        seen.add(best)
    return len(seen)


# -- conversions ---------------------------------------------------------------------
def code(s: Reg) -> int:
    return sum(1 << i for i in s)


def from_code(c: int) -> Reg:
    return frozenset(i for i in range(c.bit_length()) if c >> i & 1)


def model_of(cs) -> SetModel:
    """Wrap a library structure so the oracle can inspect its relation table only."""
    return SetModel(cs.algebra.n, lambda x, y: bool(cs.rows[code(x)] >> code(y) & 1))


# -- a cell model of regular open sets on the line ------------------------------------
class Cells:
    """Open cells between sorted breakpoints of one interval ``[lo, hi]``.

    A regular open set whose endpoints are breakpoints is exactly the set of
    cells it contains (cells are the open gaps between consecutive
    breakpoints); interior-of-closure semantics then make the Boolean
    operations plain set operations on cells.
    """

    def __init__(self, lo: Fraction, hi: Fraction, breakpoints: Iterable[Fraction]):
        pts = sorted({lo, hi} | {b for b in breakpoints if lo < b < hi})
        self.pts = pts
        self.cells = list(zip(pts, pts[1:]))

    def of_raw(self, intervals: Iterable[tuple]) -> frozenset:
        """Cells inside the closure of a union of open intervals."""
        return frozenset(
            i for i, (a, b) in enumerate(self.cells) if any(lo <= a and b <= hi for lo, hi in intervals)
        )

    def contact(self, xs: frozenset, ys: frozenset) -> bool:
        if xs & ys:
            return True
        # closures meet at a breakpoint shared by an x-cell and a y-cell
        ends = lambda cs: {self.cells[i][0] for i in cs} | {self.cells[i][1] for i in cs}
        return bool(ends(xs) & ends(ys))

    def complement(self, xs: frozenset) -> frozenset:
        return frozenset(range(len(self.cells))) - xs
