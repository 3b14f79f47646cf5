"""Contact relations on finite Boolean algebras.

Every structure is evaluated once into two bitmask tables indexed by region
code: ``rows[x]`` has bit ``y`` set iff ``x C y`` and ``ll_rows[x]`` has bit
``y`` set iff ``x << y`` (``x`` is separated from ``-y``).  The per-kind
rule that fills ``rows`` is kept available as :meth:`ContactStructure.rule`.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from .algebra import FiniteAlgebra, Region
from .errors import AlgebraMismatchError, PreconditionError

KINDS = ("overlap", "atom_graph", "full", "d_contact", "product")


class ContactStructure:
    """A binary relation attached to a finite Boolean algebra.

    Use the module-level constructors (:func:`overlap_contact`,
    :func:`atom_graph_contact`, :func:`full_contact`, :func:`d_contact`,
    :func:`product_contact`) rather than calling this directly.
    """

    __slots__ = ("algebra", "kind", "params", "rows", "ll_rows", "_key")

    def __init__(self, algebra: FiniteAlgebra, kind: str, params: dict, rows: Optional[tuple] = None):
        if kind not in KINDS:
            raise ValueError(f"unknown contact kind {kind!r}")
        if algebra.n == 0:
            raise PreconditionError("the one-element algebra (0 = 1) cannot carry a contact structure")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", dict(params))
        if rows is None:
            size = algebra.size
            rows = tuple(
                sum(1 << y for y in range(size) if self.rule(x, y)) for x in range(size)
            )
        object.__setattr__(self, "rows", rows)
        top = algebra.top_code
        size = algebra.size
        # x << y  iff  not x C -y
        ll = tuple(
            sum(1 << y for y in range(size) if not rows[x] >> (top & ~y) & 1) for x in range(size)
        )
        object.__setattr__(self, "ll_rows", ll)
        object.__setattr__(self, "_key", (algebra, rows))

    def __setattr__(self, name, value):
        raise AttributeError("ContactStructure is immutable")

    def __eq__(self, other):
        return isinstance(other, ContactStructure) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ContactStructure({self.describe()})"

    # -- per-kind rules on raw codes ------------------------------------
    def rule(self, x: int, y: int) -> bool:
        kind, p = self.kind, self.params
        if kind == "overlap":
            return x & y != 0
        if kind == "full":
            return (x, y) in p["pairs"]
        if kind == "atom_graph":
            # x C y iff some atom of x is linked to some atom of y
            adj = p["adjacency"]
            return any(adj[i] & y for i in range(self.algebra.n) if x >> i & 1)
        if kind == "d_contact":
            d = p["d"]
            return x & y != 0 or (x & d != 0 and y & d != 0)
        if kind == "product":
            left, right = p["left"], p["right"]
            shift = left.algebra.n
            lmask = left.algebra.top_code
            return bool(
                left.rows[x & lmask] >> (y & lmask) & 1
                or right.rows[x >> shift] >> (y >> shift) & 1
            )
        raise AssertionError(kind)

    # -- code-level queries -------------------------------------------------
    def c(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def ll_code(self, x: int, y: int) -> bool:
        return bool(self.ll_rows[x] >> y & 1)

    def describe(self) -> dict:
        alg = self.algebra
        out: dict = {"kind": self.kind, "atoms": alg.n, "labels": list(alg.labels)}
        if self.kind == "d_contact":
            out["d"] = alg.label_of(self.params["d"])
        elif self.kind == "atom_graph":
            out["edges"] = [[alg.labels[i], alg.labels[j]] for i, j in self.params["edges"]]
        elif self.kind == "full":
            out["pairs"] = sorted(
                [alg.label_of(x), alg.label_of(y)] for x, y in self.params["pairs"] if x <= y
            )
        elif self.kind == "product":
            out["left"] = self.params["left"].describe()
            out["right"] = self.params["right"].describe()
        return out


def _same_algebra(cs: ContactStructure, *regions: Region) -> None:
    for r in regions:
        if r.algebra != cs.algebra:
            raise AlgebraMismatchError("region does not belong to the structure's algebra")


# -- constructors -----------------------------------------------------------
def overlap_contact(algebra: FiniteAlgebra) -> ContactStructure:
    return ContactStructure(algebra, "overlap", {})


def d_contact(algebra: FiniteAlgebra, d: Region | int) -> ContactStructure:
    """Contact generated by a distinguished nonzero region ``d``:
    ``x C y`` iff ``x`` overlaps ``y`` or both overlap ``d``."""
    code = d.code if isinstance(d, Region) else int(d)
    if isinstance(d, Region) and d.algebra != algebra:
        raise AlgebraMismatchError("d does not belong to the algebra")
    if code == 0:
        raise PreconditionError("the distinguished region must be nonzero")
    return ContactStructure(algebra, "d_contact", {"d": code})


def total_contact(algebra: FiniteAlgebra) -> ContactStructure:
    """The largest contact: every two nonzero regions touch (``d = 1``)."""
    return d_contact(algebra, algebra.top_code)


def atom_graph_contact(algebra: FiniteAlgebra, edges: Iterable[tuple[int, int]]) -> ContactStructure:
    """Contact induced by a reflexive symmetric graph on atom indices."""
    n = algebra.n
    adj = [1 << i for i in range(n)]
    norm = set()
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) refers to a missing atom")
        if i == j:
            continue
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        norm.add((min(i, j), max(i, j)))
    return ContactStructure(algebra, "atom_graph", {"adjacency": tuple(adj), "edges": tuple(sorted(norm))})


def full_contact(algebra: FiniteAlgebra, pairs: Iterable[tuple]) -> ContactStructure:
    """An explicitly listed relation.

    ``pairs`` holds region codes or :class:`Region` values.  The list must
    be closed under swapping and may not mention zero; it is rejected
    otherwise rather than repaired.
    """
    norm = set()
    for x, y in pairs:
        xc = x.code if isinstance(x, Region) else int(x)
        yc = y.code if isinstance(y, Region) else int(y)
        if not (0 <= xc < algebra.size and 0 <= yc < algebra.size):
            raise ValueError(f"pair ({xc}, {yc}) out of range")
        if xc == 0 or yc == 0:
            raise ValueError("a contact relation may not relate the zero region")
        norm.add((xc, yc))
    missing = [(x, y) for x, y in norm if (y, x) not in norm]
    if missing:
        x, y = min(missing)
        raise ValueError(
            f"relation is not symmetric: {algebra.label_of(x)} C {algebra.label_of(y)} listed without its mirror"
        )
    return ContactStructure(algebra, "full", {"pairs": frozenset(norm)})


def relation_contact(algebra: FiniteAlgebra, rows: tuple[int, ...]) -> ContactStructure:
    """Full-relation structure from precomputed bitmask rows (used by enumeration)."""
    pairs = frozenset((x, y) for x in range(algebra.size) for y in range(algebra.size) if rows[x] >> y & 1)
    if any(x == 0 or y == 0 for x, y in pairs) or any((y, x) not in pairs for x, y in pairs):
        raise ValueError("rows must describe a symmetric relation avoiding zero")
    return ContactStructure(algebra, "full", {"pairs": pairs}, rows=tuple(rows))


def _product_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    labels = a.labels + b.labels
    if len(set(labels)) != len(labels):
        labels = tuple(f"L.{s}" for s in a.labels) + tuple(f"R.{s}" for s in b.labels)
    return FiniteAlgebra(a.n + b.n, labels)


def product_contact(left: ContactStructure, right: ContactStructure) -> ContactStructure:
    """Product algebra with the disjunctive contact
    ``<x,u> C <y,w>`` iff ``x C1 y`` or ``u C2 w``.

    Region codes of the product put the left atoms in the low bits.
    """
    return ContactStructure(_product_algebra(left.algebra, right.algebra), "product", {"left": left, "right": right})


def pair_region(cs: ContactStructure, left: Region, right: Region) -> Region:
    """The product region ``<left, right>`` of a product structure."""
    if cs.kind != "product":
        raise PreconditionError("pair_region needs a product structure")
    shift = cs.params["left"].algebra.n
    return Region(cs.algebra, left.code | right.code << shift)


def conjunctive_product_relation(left: ContactStructure, right: ContactStructure) -> ContactStructure:
    """The relation ``<x,u> R <y,w>`` iff ``x C1 y`` and ``u C2 w``.

    It is symmetric and never touches zero, so it is stored as a full
    relation; whether it is a contact is left to :func:`diagnose_not_contact`.
    """
    alg = _product_algebra(left.algebra, right.algebra)
    shift = left.algebra.n
    lmask = left.algebra.top_code
    size = alg.size
    rows = tuple(
        sum(
            1 << y
            for y in range(size)
            if left.c(x & lmask, y & lmask) and right.c(x >> shift, y >> shift)
        )
        for x in range(size)
    )
    return relation_contact(alg, rows)


# -- region-level queries -------------------------------------------------
def contact(cs: ContactStructure, a: Region, b: Region) -> bool:
    _same_algebra(cs, a, b)
    return cs.c(a.code, b.code)


def separated(cs: ContactStructure, a: Region, b: Region) -> bool:
    return not contact(cs, a, b)


def ll(cs: ContactStructure, a: Region, b: Region) -> bool:
    """Non-tangential inclusion: ``a`` is separated from the complement of ``b``."""
    _same_algebra(cs, a, b)
    return cs.ll_code(a.code, b.code)


def contact_pairs(cs: ContactStructure) -> list[tuple[Region, Region]]:
    alg = cs.algebra
    return [
        (Region(alg, x), Region(alg, y))
        for x, y in combinations(range(alg.size), 2)
        if cs.c(x, y)
    ]
