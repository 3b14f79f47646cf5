"""Grzegorczyk representatives, covering, G-points and abstractive sets on finite structures.

Region sets are stored as bitmasks over region codes (bit ``c`` set iff the
region with code ``c`` is a member), which makes the exhaustive searches
below cheap for universes of up to 16 regions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import FiniteAlgebra, Region, bits
from .checks import check_axiom
from .contact import ContactStructure
from .errors import AlgebraMismatchError, CapabilityError, PreconditionError
from .reports import CheckReport

ENUMERATION_CAP = 16


@dataclass(frozen=True)
class RegionSet:
    """A finite set of regions of one algebra."""

    algebra: FiniteAlgebra
    mask: int

    @classmethod
    def of(cls, algebra: FiniteAlgebra, regions: Iterable[Region | int]) -> "RegionSet":
        mask = 0
        for r in regions:
            if isinstance(r, Region):
                if r.algebra != algebra:
                    raise AlgebraMismatchError("region does not belong to the algebra")
                mask |= 1 << r.code
            else:
                mask |= 1 << int(r)
        return cls(algebra, mask)

    @property
    def codes(self) -> list[int]:
        return list(bits(self.mask))

    @property
    def members(self) -> frozenset[Region]:
        return frozenset(Region(self.algebra, c) for c in bits(self.mask))

    def __iter__(self):
        return (Region(self.algebra, c) for c in bits(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, r: Region) -> bool:
        return r.algebra == self.algebra and bool(self.mask >> r.code & 1)

    def __str__(self) -> str:
        return "[" + ", ".join(str(r) for r in self) + "]"


def _as_set(cs_or_alg, q) -> RegionSet:
    alg = cs_or_alg.algebra if isinstance(cs_or_alg, ContactStructure) else cs_or_alg
    if isinstance(q, RegionSet):
        if q.algebra != alg:
            raise AlgebraMismatchError("region set belongs to another algebra")
        return q
    return RegionSet.of(alg, q)


# -- covering ---------------------------------------------------------------
def _covers_mask(xmask: int, ymask: int) -> bool:
    return all(any(x & y == x for x in bits(xmask)) for y in bits(ymask))


def covers(X: RegionSet, Y: RegionSet) -> bool:
    """True iff every member of ``Y`` contains some member of ``X``."""
    if X.algebra != Y.algebra:
        raise AlgebraMismatchError("region sets belong to different algebras")
    if not X.mask or not Y.mask:
        raise ValueError("covering is defined for nonempty region sets")
    return _covers_mask(X.mask, Y.mask)


def coinitial(X: RegionSet, Y: RegionSet) -> bool:
    return covers(X, Y) and covers(Y, X)


# -- G-representatives ----------------------------------------------------
@dataclass(frozen=True)
class GCheckReport:
    """Per-condition outcome of the G-representative test.

    Witnesses: ``r0`` the zero region; ``r1`` an incomparable pair;
    ``r2`` a member with no non-tangential part inside the set; ``r3`` a
    pair overlapping every member yet separated.
    """

    r0: bool
    r1: bool
    r2: bool
    r3: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.r0 and self.r1 and self.r2 and self.r3

    def __bool__(self) -> bool:
        return self.holds


def _r1_witness(cs: ContactStructure, qmask: int) -> Optional[tuple[int, int]]:
    qs = list(bits(qmask))
    for i, u in enumerate(qs):
        for v in qs[i + 1:]:
            if not (cs.ll_code(u, v) or cs.ll_code(v, u)):
                return u, v
    return None


def _r2_witness(cs: ContactStructure, qmask: int) -> Optional[int]:
    for u in bits(qmask):
        if not any(cs.ll_code(v, u) for v in bits(qmask)):
            return u
    return None


def _overlapping_all(cs: ContactStructure, qmask: int) -> int:
    qs = list(bits(qmask))
    return sum(1 << x for x in range(cs.algebra.size) if all(x & u for u in qs))


def _r3_witness(cs: ContactStructure, qmask: int) -> Optional[tuple[int, int]]:
    common = _overlapping_all(cs, qmask)
    for x in bits(common):
        far = common & ~cs.rows[x]
        if far:
            return x, (far & -far).bit_length() - 1
    return None


def _is_grep_mask(cs: ContactStructure, qmask: int) -> bool:
    return (
        qmask != 0
        and not qmask & 1
        and _r1_witness(cs, qmask) is None
        and _r2_witness(cs, qmask) is None
        and _r3_witness(cs, qmask) is None
    )


def is_g_representative(cs: ContactStructure, Q) -> GCheckReport:
    q = _as_set(cs, Q)
    if not q.mask:
        raise ValueError("a G-representative candidate must be nonempty")
    alg = cs.algebra
    w: dict = {}
    r0 = not q.mask & 1
    if not r0:
        w["r0"] = alg.zero
    p1 = _r1_witness(cs, q.mask)
    if p1:
        w["r1"] = (Region(alg, p1[0]), Region(alg, p1[1]))
    p2 = _r2_witness(cs, q.mask)
    if p2 is not None:
        w["r2"] = Region(alg, p2)
    p3 = _r3_witness(cs, q.mask)
    if p3:
        w["r3"] = (Region(alg, p3[0]), Region(alg, p3[1]))
    return GCheckReport(r0, p1 is None, p2 is None, p3 is None, w)


def _check_cap(cs: ContactStructure, cap: int) -> None:
    if cs.algebra.size > cap:
        raise CapabilityError(
            f"exhaustive G-representative enumeration is capped at {cap} regions, got {cs.algebra.size}"
        )


def _chains(cs: ContactStructure) -> list[int]:
    """All nonempty sets of nonzero regions pairwise comparable under ``<<``."""
    size = cs.algebra.size
    comp = [0] * size
    for u in range(1, size):
        for v in range(1, size):
            if u != v and (cs.ll_code(u, v) or cs.ll_code(v, u)):
                comp[u] |= 1 << v
    out = []

    def extend(current: int, candidates: int):
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            nxt = current | low
            out.append(nxt)
            extend(nxt, candidates & comp[v])

    extend(0, ((1 << size) - 1) & ~1)
    return out


def enumerate_g_representatives(cs: ContactStructure, method: str = "chains", cap: int = ENUMERATION_CAP) -> list[RegionSet]:
    """Every nonempty region set that is a G-representative, ordered by membership mask.

    ``method="chains"`` only tests ``<<``-chains (condition r1 is
    necessary); ``method="brute"`` tests every subset of the universe.
    """
    _check_cap(cs, cap)
    if method == "chains":
        candidates = _chains(cs)
    elif method == "brute":
        candidates = range(1, 1 << cs.algebra.size)
    else:
        raise ValueError(f"unknown method {method!r}")
    found = sorted(m for m in candidates if _is_grep_mask(cs, m))
    return [RegionSet(cs.algebra, m) for m in found]


# -- equivalence classes and filters ------------------------------------------
@dataclass(frozen=True)
class EquivalenceClasses:
    """Partition of the G-representatives under coinitiality."""

    classes: tuple[tuple[RegionSet, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, q: RegionSet) -> int:
        for i, block in enumerate(self.classes):
            if q in block:
                return i
        raise KeyError(str(q))


def equivalence_classes(cs: ContactStructure, greps: Optional[list[RegionSet]] = None) -> EquivalenceClasses:
    if greps is None:
        greps = enumerate_g_representatives(cs)
    blocks: list[list[RegionSet]] = []
    for q in greps:
        for block in blocks:
            rep = block[0]
            if _covers_mask(q.mask, rep.mask) and _covers_mask(rep.mask, q.mask):
                block.append(q)
                break
        else:
            blocks.append([q])
    return EquivalenceClasses(tuple(tuple(b) for b in blocks))


@dataclass(frozen=True)
class GFilter:
    """Upward closure of a G-representative, stored extensionally as a code bitmask."""

    algebra: FiniteAlgebra
    mask: int

    @property
    def elements(self) -> frozenset[Region]:
        return frozenset(Region(self.algebra, c) for c in bits(self.mask))

    def __contains__(self, r: Region) -> bool:
        return bool(self.mask >> r.code & 1)

    def __str__(self) -> str:
        return "{" + ", ".join(str(Region(self.algebra, c)) for c in bits(self.mask)) + "}"


def _up_closure(alg: FiniteAlgebra, qmask: int) -> int:
    qs = list(bits(qmask))
    return sum(1 << x for x in range(alg.size) if any(q & x == q for q in qs))


def filter_of(cs: ContactStructure, Q) -> GFilter:
    """The G-point generated by ``Q``.

    Also verifies that membership via ``<=`` and via ``<<`` coincide, as
    they must for a G-representative.
    """
    q = _as_set(cs, Q)
    if not q.mask or not _is_grep_mask(cs, q.mask):
        raise PreconditionError(f"{q} is not a G-representative")
    up = _up_closure(cs.algebra, q.mask)
    via_ll = sum(1 << x for x in range(cs.algebra.size) if any(cs.ll_code(y, x) for y in bits(q.mask)))
    if up != via_ll:
        raise AssertionError(f"filter membership characterizations disagree for {q}")
    return GFilter(cs.algebra, up)


def g_points(cs: ContactStructure, greps: Optional[list[RegionSet]] = None) -> set[GFilter]:
    if greps is None:
        greps = enumerate_g_representatives(cs)
    return {filter_of(cs, q) for q in greps}


def check_bijection(cs: ContactStructure, greps: Optional[list[RegionSet]] = None) -> CheckReport:
    """The class-to-filter map is well defined and injective (it is onto by construction)."""
    if greps is None:
        greps = enumerate_g_representatives(cs)
    eq = equivalence_classes(cs, greps)
    images = []
    for block in eq.classes:
        fs = {filter_of(cs, q) for q in block}
        if len(fs) != 1:
            return CheckReport("class-filter-bijection", False, (block[0],), note="class maps to several filters")
        images.append(fs.pop())
    if len(set(images)) != len(images):
        return CheckReport("class-filter-bijection", False, tuple(images), note="two classes share a filter")
    return CheckReport("class-filter-bijection", True, details={"classes": len(eq), "points": len(images)})


# -- abstractive sets and W-representatives -----------------------------------
@dataclass(frozen=True)
class AbstractiveReport:
    """Abstractive-set test on a finite region set.

    ``a_literal`` reads the lower-bound clause with zero allowed (it then
    always fails, witnessed by zero); ``a_nonzero`` only counts nonzero
    lower bounds and is the reading used for ``holds``.
    """

    r0: bool
    r1: bool
    r2_strong: bool
    a_literal: bool
    a_nonzero: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.r0 and self.r1 and self.a_nonzero

    def __bool__(self) -> bool:
        return self.holds


def is_abstractive(cs: ContactStructure, A) -> AbstractiveReport:
    a = _as_set(cs, A)
    if not a.mask:
        raise ValueError("abstractive-set candidate must be nonempty")
    alg = cs.algebra
    w: dict = {"a_literal": alg.zero}
    r0 = not a.mask & 1
    if not r0:
        w["r0"] = alg.zero
    p1 = _r1_witness(cs, a.mask)
    if p1:
        w["r1"] = (Region(alg, p1[0]), Region(alg, p1[1]))
    r2s = True
    for x in bits(a.mask):
        if not any(cs.ll_code(y, x) and y != x for y in bits(a.mask)):
            r2s = False
            w["r2_strong"] = Region(alg, x)
            break
    lower = alg.top_code
    for x in bits(a.mask):
        lower &= x
    a_nonzero = lower == 0
    if not a_nonzero:
        w["a_nonzero"] = Region(alg, lower)
    return AbstractiveReport(r0, p1 is None, r2s, False, a_nonzero, w)


def is_w_representative(cs: ContactStructure, Q) -> CheckReport:
    """On a finite algebra no set is abstractive, so none is a W-representative."""
    rep = is_abstractive(cs, Q)
    if rep.holds:  # unreachable on finite algebras; kept as a guard
        raise AssertionError("finite region set reported abstractive")
    key = "a_nonzero" if "a_nonzero" in rep.witnesses else next(k for k in ("r0", "r1") if k in rep.witnesses)
    return CheckReport(
        "W-representative", False, (rep.witnesses[key],),
        note=f"not abstractive ({key} fails); finite algebras are atomic and have no abstractive sets",
    )


def w_minimality_check(cs, A, candidates=()):
    """Check ``A`` against candidates ``B`` it covers: each must cover ``A`` back.

    On a finite structure the check is vacuous because ``A`` is never
    abstractive.  Nests over an interval ambient are dispatched to
    :func:`contactlab.interval.nest.w_minimality_check`.
    """
    from .interval.nest import Nest, w_minimality_check as nest_check

    if isinstance(A, Nest):
        return nest_check(A, candidates)
    rep = is_abstractive(cs, A)
    return CheckReport(
        "W-minimality", True,
        note="vacuous: atomic (finite) algebras have no abstractive sets, so no W-representatives"
        + ("" if rep.holds else f"; candidate fails the abstractive test"),
        details={"vacuous": True},
    )


def check_separated_parts(cs: ContactStructure) -> CheckReport:
    """C5 and atomlessness imply that every nonzero region has two separated nonzero proper parts.

    The conclusion is evaluated exhaustively and reported alongside the
    premises; the implication holds when the premises fail or the
    conclusion holds.
    """
    alg = cs.algebra
    c5 = check_axiom(cs, "C5").holds
    atomless = False  # a finite algebra with at least one atom is never atomless
    bad = None
    for x in range(1, alg.size):
        parts = [y for y in range(1, alg.size) if y & x == y and y != x]
        if not any(not cs.c(y, z) for y in parts for z in parts):
            bad = x
            break
    details = {"C5": c5, "atomless": atomless, "conclusion": bad is None}
    if bad is not None:
        details["conclusion_witness"] = Region(alg, bad)
    ok = not (c5 and atomless) or bad is None
    return CheckReport("separated-parts", ok, None if ok else (Region(alg, bad),), details=details)


def coi_separ_ext_holds(cs: ContactStructure, q1: RegionSet, q2: RegionSet) -> bool:
    """For G-representatives: all members mutually in contact iff ``covers(q2, q1)``."""
    touching = all(cs.c(x, y) for x in bits(q1.mask) for y in bits(q2.mask))
    return touching == _covers_mask(q2.mask, q1.mask)


def check_covering_equivalence(cs: ContactStructure, greps: Optional[list[RegionSet]] = None) -> CheckReport:
    """Covering restricted to the G-representatives is reflexive, symmetric and transitive."""
    if greps is None:
        greps = enumerate_g_representatives(cs)
    for q in greps:
        if not _covers_mask(q.mask, q.mask):  # pragma: no cover - covering is reflexive
            return CheckReport("covering-equivalence", False, (q,), note="not reflexive")
    for q1 in greps:
        for q2 in greps:
            if _covers_mask(q1.mask, q2.mask) and not _covers_mask(q2.mask, q1.mask):
                return CheckReport("covering-equivalence", False, (q1, q2), note="not symmetric")
    for q1 in greps:
        for q2 in greps:
            if not _covers_mask(q1.mask, q2.mask):
                continue
            for q3 in greps:
                if _covers_mask(q2.mask, q3.mask) and not _covers_mask(q1.mask, q3.mask):
                    return CheckReport("covering-equivalence", False, (q1, q2, q3), note="not transitive")
    return CheckReport("covering-equivalence", True, details={"greps": len(greps)})


def check_coi_separ_ext(cs: ContactStructure, greps: Optional[list[RegionSet]] = None) -> CheckReport:
    """:func:`coi_separ_ext_holds` for every ordered pair of G-representatives."""
    if greps is None:
        greps = enumerate_g_representatives(cs)
    for q1 in greps:
        for q2 in greps:
            if not coi_separ_ext_holds(cs, q1, q2):
                return CheckReport("coi-separ-ext", False, (q1, q2))
    return CheckReport("coi-separ-ext", True, details={"pairs": len(greps) ** 2})
