"""Nests: rule-generated decreasing sequences of interval regions.

A nest is a candidate abstractive set.  Prefix checks evaluate the first
``k`` members exactly.  A *certificate* (a single centre ``p`` in the
ambient, radii strictly decreasing to zero) upgrades some prefix checks to
statements about the whole nest; every certified report names the result
that licenses the upgrade in its ``theorem`` field.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional, Sequence

from ..errors import ApproximationError, ParseError, PreconditionError
from ..reports import DepthReport
from .space import (
    INF,
    AmbientSpace,
    IntervalPiece,
    IntervalRegion,
    Number,
    PointPiece,
    contact_T,
    fmt,
    ia_interpolant,
    in_closure,
    ll_T,
    measure,
    num,
    random_region,
    regularize,
    ro_complement,
    ro_leq,
    ro_meet,
    ro_overlap,
)

DEFAULT_DEPTH = 32
KINDS = ("harmonic", "odd_harmonic", "geometric", "multi_harmonic", "approx_harmonic", "explicit")

TH_LOCAL_BASIS = "a local basis at a point is a W-representative (and hence a G-representative)"
TH_R3 = "regions overlapping every member of a shrinking local basis at p have p in their closure"
TH_COINITIAL = "two local bases at the same point are coinitial"
TH_ABSTRACTIVE = "members shrink to a non-isolated point, so no nonzero region lies below all of them"


@dataclass(frozen=True)
class Nest:
    """A decreasing sequence ``a_1, a_2, ...`` of regions of ``ambient``.

    Members are symmetric intervals around each centre, intersected with
    the ambient and regularized.  Radii by kind, for ``k >= 1``:

    * ``harmonic``: ``c/k``
    * ``odd_harmonic``: ``c/(2k-1)``
    * ``geometric``: ``c * r**k``
    * ``multi_harmonic``: ``c/k`` around each of several centres
    * ``approx_harmonic``: a rational over-approximation of ``1/(k*alpha)``
      for an irrational ``alpha``; flagged ``approximate``
    * ``explicit``: the listed ``prefix`` regions, then the ``tail`` nest
    """

    ambient: AmbientSpace
    kind: str
    centers: tuple = ()
    c: Fraction = Fraction(1)
    r: Optional[Fraction] = None
    alpha: Optional[float] = None
    prefix: tuple = ()
    tail: Optional["Nest"] = None
    approximate: bool = field(default=False, init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown nest kind {self.kind!r}")
        object.__setattr__(self, "centers", tuple(num(p) for p in self.centers))
        object.__setattr__(self, "c", num(self.c))
        if self.kind == "explicit":
            if not self.prefix:
                raise PreconditionError("explicit nest needs a nonempty prefix")
            if any(m.ambient != self.ambient for m in self.prefix):
                raise PreconditionError("prefix regions live in a different ambient space")
            if self.tail is not None and self.tail.ambient != self.ambient:
                raise PreconditionError("tail nest lives in a different ambient space")
            object.__setattr__(self, "approximate", bool(self.tail and self.tail.approximate))
            return
        if not self.centers:
            raise PreconditionError(f"{self.kind} nest needs a centre")
        if self.kind != "multi_harmonic" and len(self.centers) != 1:
            raise PreconditionError(f"{self.kind} nest takes exactly one centre")
        if not self.c > 0:
            raise PreconditionError("radius scale must be positive; a constant tail is not a nest")
        if self.kind == "geometric":
            if self.r is None or not 0 < num(self.r) < 1:
                raise PreconditionError("geometric ratio must lie strictly between 0 and 1")
            object.__setattr__(self, "r", num(self.r))
        if self.kind == "approx_harmonic":
            if self.alpha is None or not self.alpha > 0:
                raise PreconditionError("approx_harmonic needs a positive alpha")
            object.__setattr__(self, "approximate", True)

    # -- constructors -------------------------------------------------------
    @classmethod
    def harmonic(cls, p, c=1, ambient: Optional[AmbientSpace] = None) -> "Nest":
        return cls(ambient or AmbientSpace.real_line(), "harmonic", (p,), c)

    @classmethod
    def odd_harmonic(cls, p, c=1, ambient: Optional[AmbientSpace] = None) -> "Nest":
        return cls(ambient or AmbientSpace.real_line(), "odd_harmonic", (p,), c)

    @classmethod
    def geometric(cls, p, r, c=1, ambient: Optional[AmbientSpace] = None) -> "Nest":
        return cls(ambient or AmbientSpace.real_line(), "geometric", (p,), c, r=r)

    @classmethod
    def multi_harmonic(cls, centers, c=1, ambient: Optional[AmbientSpace] = None) -> "Nest":
        return cls(ambient or AmbientSpace.real_line(), "multi_harmonic", tuple(centers), c)

    @classmethod
    def approx_harmonic(cls, p, alpha: float, ambient: Optional[AmbientSpace] = None) -> "Nest":
        return cls(ambient or AmbientSpace.real_line(), "approx_harmonic", (p,), alpha=alpha)

    @classmethod
    def explicit(cls, prefix: Sequence[IntervalRegion], tail: Optional["Nest"] = None) -> "Nest":
        if not prefix:
            raise PreconditionError("explicit nest needs a nonempty prefix")
        return cls(prefix[0].ambient, "explicit", prefix=tuple(prefix), tail=tail)

    # -- generation ---------------------------------------------------------
    def radius(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("nest members are indexed from 1")
        if self.kind in ("harmonic", "multi_harmonic"):
            return self.c / k
        if self.kind == "odd_harmonic":
            return self.c / (2 * k - 1)
        if self.kind == "geometric":
            return self.c * self.r ** k
        if self.kind == "approx_harmonic":
            # round alpha down so the rational radius is never too small
            lo = Fraction(self.alpha).limit_denominator(10**6)
            if lo > self.alpha:
                lo -= Fraction(1, 10**6)
            return 1 / (k * lo)
        raise PreconditionError("explicit nests have no radius rule")

    def member(self, k: int) -> IntervalRegion:
        if self.kind == "explicit":
            if k <= len(self.prefix):
                return self.prefix[k - 1]
            if self.tail is None:
                raise PreconditionError(f"explicit nest without tail rule has only {len(self.prefix)} members")
            return self.tail.member(k - len(self.prefix))
        return _member(self, k)

    def members(self, k: int) -> list[IntervalRegion]:
        return [self.member(i) for i in range(1, k + 1)]

    @property
    def has_rule(self) -> bool:
        """Whether the whole sequence is defined (not just a finite prefix)."""
        return self.kind != "explicit" or (self.tail is not None and self.tail.has_rule)

    @property
    def rule(self) -> "Nest":
        """The radius-generated nest governing the tail."""
        return self.tail.rule if self.kind == "explicit" else self

    def __str__(self):
        if self.kind == "explicit":
            head = ", ".join(str(m) for m in self.prefix)
            return f"explicit[{head}]" + (f" then {self.tail}" if self.tail else "")
        ctr = ",".join(fmt(p) for p in self.centers)
        extra = f":{fmt(self.r)}" if self.kind == "geometric" else ""
        extra += f":{self.alpha}" if self.kind == "approx_harmonic" else ""
        scale = f":{fmt(self.c)}" if self.kind != "approx_harmonic" else ""
        return f"{self.kind}:{ctr}{scale if self.kind != 'geometric' else ''}{extra}" + (
            f" on {self.ambient}" if not self._on_real_line else ""
        )

    @property
    def _on_real_line(self) -> bool:
        return self.ambient == AmbientSpace.real_line()


@lru_cache(maxsize=4096)
def _member(nest: Nest, k: int) -> IntervalRegion:
    rho = nest.radius(k)
    return regularize(nest.ambient, [(p - rho, p + rho) for p in nest.centers])


def parse_nest(text: str, ambient: Optional[AmbientSpace] = None) -> Nest:
    """``harmonic:P[:C]``, ``odd_harmonic:P[:C]``, ``geometric:P:R``,
    ``multi_harmonic:P1,P2[:C]`` or ``approx_harmonic:P:ALPHA``."""
    ambient = ambient or AmbientSpace.real_line()
    parts = [s.strip() for s in text.split(":")]
    kind = parts[0]
    try:
        if kind in ("harmonic", "odd_harmonic") and len(parts) in (2, 3):
            return Nest(ambient, kind, (parts[1],), parts[2] if len(parts) == 3 else 1)
        if kind == "geometric" and len(parts) == 3:
            return Nest.geometric(parts[1], parts[2], ambient=ambient)
        if kind == "multi_harmonic" and len(parts) in (2, 3):
            return Nest.multi_harmonic(parts[1].split(","), parts[2] if len(parts) == 3 else 1, ambient)
        if kind == "approx_harmonic" and len(parts) == 3:
            return Nest.approx_harmonic(parts[1], float(parts[2]), ambient)
    except (ValueError, PreconditionError) as exc:
        raise ParseError(f"bad nest {text!r}: {exc}") from None
    raise ParseError(f"bad nest {text!r}; expected e.g. 'harmonic:0:1' or 'geometric:0:1/2'")


# -- certificates --------------------------------------------------------------
def _certificate(nest: Nest, p=None) -> tuple[bool, str]:
    """Rule-level side conditions for ``nest`` being a shrinking local basis at ``p``."""
    if nest.approximate:
        raise ApproximationError(f"{nest} uses rational over-approximations; no certified claims")
    if not nest.has_rule:
        return False, "no tail rule; only the listed prefix is known"
    rule = nest.rule
    if len(rule.centers) != 1:
        return False, f"tail rule has {len(rule.centers)} centres, not a single point"
    q = rule.centers[0]
    if p is not None and num(p) != q:
        return False, f"tail rule is centred at {fmt(q)}, not {fmt(num(p))}"
    if not nest.ambient.contains(q):
        return False, f"centre {fmt(q)} is not a point of {nest.ambient}"
    # radii: c/k, c/(2k-1) and c*r^k with c > 0, 0 < r < 1 strictly decrease to 0
    if not (rule.c > 0 and (rule.kind != "geometric" or 0 < rule.r < 1)):
        return False, "radius rule is not strictly decreasing to zero"
    if nest.kind == "explicit":
        for i, m in enumerate(nest.prefix, start=1):
            if not _contains_point(m, q):
                return False, f"prefix member {i} does not contain {fmt(q)}"
        last, first_tail = nest.prefix[-1], nest.tail.member(1)
        if not ll_T(first_tail, last):
            return False, "first tail member is not well inside the last prefix member"
    return True, f"single centre {fmt(q)} in the ambient, radii strictly decreasing to 0"


def _contains_point(x: IntervalRegion, t) -> bool:
    i = x.ambient.piece_index(t)
    if i is None:
        return False
    piece = x.ambient.pieces[i]
    if isinstance(piece, PointPiece):
        return bool(x.parts[i])
    for lo, hi in x.parts[i]:
        if (lo < t or lo == t == piece.lo) and (t < hi or hi == t == piece.hi):
            return True
    return False


def center_of(nest: Nest):
    ok, _ = _certificate(nest)
    return nest.rule.centers[0] if ok else None


def overlaps_every_member(nest: Nest, u: IntervalRegion) -> bool:
    """Exact test that ``u`` overlaps every member of a rule-generated nest.

    With finitely many centres in the ambient and radii shrinking to 0,
    ``u`` overlaps all members iff some centre lies in the closure of ``u``
    (a nested family of nonempty traces forces one centre to recur).
    """
    if nest.approximate:
        raise ApproximationError(f"{nest} is approximate")
    if not nest.has_rule:
        raise PreconditionError("membership of the whole nest needs a tail rule")
    if nest.kind == "explicit" and not all(ro_overlap(u, m) for m in nest.prefix):
        return False
    return any(nest.ambient.contains(q) and in_closure(u, q) for q in nest.rule.centers)


# -- prefix checks -------------------------------------------------------------
def nest_prefix_check(nest: Nest, k: int = DEFAULT_DEPTH) -> DepthReport:
    """Check r0, r1, r2, strict decrease and the prefix form of (A) to depth ``k``."""
    if k < 2:
        raise PreconditionError("depth must be at least 2")
    ms = nest.members(k + 1)
    checks: dict[str, object] = {}
    checks["r0"] = next((i for i, m in enumerate(ms[:k], 1) if not m), None)
    checks["r1"] = next(((i, j) for i, j in combinations(range(1, k + 1), 2) if not ll_T(ms[j - 1], ms[i - 1])), None)
    # r2: every a_i, i <= k, has a member strictly ll-below it (a_{i+1} serves)
    checks["r2"] = next((i for i in range(1, k + 1) if not ll_T(ms[i], ms[i - 1])), None)
    checks["r2s"] = next(
        (i for i in range(1, k + 1) if not (ro_leq(ms[i], ms[i - 1]) and ms[i] != ms[i - 1])), None
    )
    # (A) on a prefix: an isolated point inside every member would be a nonzero lower bound
    amb = nest.ambient
    checks["A_prefix"] = next(
        (amb.pieces[i].at for i in amb.isolated_points() if all(m.parts[i] for m in ms)), None
    )
    failed = {name: w for name, w in checks.items() if w is not None}
    details = {
        "checks": {name: w is None for name, w in checks.items()},
        "measure_at_depth": measure(ms[k - 1]),
    }
    if failed:
        name, w = next(iter(failed.items()))
        return DepthReport("nest-prefix", False, k, witness={"check": name, "index": w}, details=details)
    try:
        ok, why = _certificate(nest)
    except ApproximationError as exc:
        return DepthReport("nest-prefix", True, k, note=f"prefix only: {exc}", details=details)
    q = nest.rule.centers[0] if ok else None
    if ok and q in [nest.ambient.pieces[i].at for i in nest.ambient.isolated_points()]:
        ok, why = False, f"centre {fmt(q)} is isolated, so {{{fmt(q)}}} lies below every member"
    details["A_certified"] = ok
    details["r2_certified"] = ok
    return DepthReport(
        "nest-prefix", True, k, certified=ok, note=why, theorem=TH_ABSTRACTIVE if ok else "", details=details
    )


def local_basis_certificate(nest: Nest, p, k: int = DEFAULT_DEPTH) -> DepthReport:
    """Certify that ``nest`` is a shrinking local basis at ``p``."""
    p = num(p)
    if not nest.has_rule:
        known = list(nest.prefix)
        miss = next((i for i, m in enumerate(known, 1) if not _contains_point(m, p)), None)
        return DepthReport(
            "local-basis", miss is None, len(known), witness=miss,
            note="prefix-only: nest has no tail rule, so nothing is certified",
        )
    miss = next((i for i in range(1, k + 1) if not _contains_point(nest.member(i), p)), None)
    if miss is not None:
        return DepthReport(
            "local-basis", False, k, witness=miss, note=f"{fmt(p)} is not in member {miss}",
        )
    ok, why = _certificate(nest, p)
    return DepthReport(
        "local-basis", ok, k, certified=ok, note=why,
        theorem=TH_LOCAL_BASIS if ok else "",
        details={"w_representative_by_theorem": ok},
    )


def _first_member_below(a: Nest, b: IntervalRegion, limit: int) -> Optional[int]:
    for j in range(1, limit + 1):
        if ro_leq(a.member(j), b):
            return j
    return None


def _certified_index(a: Nest, q, b: IntervalRegion) -> int:
    """An index ``j`` with ``a_j <= b``, guaranteed when ``q`` is in the open ``b``."""
    eps = INF
    for i, piece in enumerate(a.ambient.pieces):
        if isinstance(piece, PointPiece):
            if piece.at != q:
                eps = min(eps, abs(piece.at - q))
            continue
        if piece.lo <= q <= piece.hi:
            lo, hi = next((lo, hi) for lo, hi in b.parts[i] if (lo < q or lo == q == piece.lo) and (q < hi or q == hi == piece.hi))
            if lo < q:
                eps = min(eps, q - lo)
            if q < hi:
                eps = min(eps, hi - q)
        else:
            eps = min(eps, piece.lo - q if piece.lo > q else q - piece.hi)
    rule = a.rule
    offset = len(a.prefix) if a.kind == "explicit" else 0
    # radii decrease, so binary-search the first index with radius < eps
    hi = 1
    while rule.radius(hi) >= eps:
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        lo, hi = (lo, mid) if rule.radius(mid) < eps else (mid, hi)
    return hi + offset


def nest_covering(a: Nest, b: Nest, k: int = DEFAULT_DEPTH) -> DepthReport:
    """Whether ``a`` covers ``b``: every member of ``b`` contains a member of ``a``."""
    try:
        qa = center_of(a)
        qb = center_of(b)
    except ApproximationError:
        qa = qb = None
    found: dict[int, int] = {}
    # without a tail rule only the listed prefix exists
    kb = k if b.has_rule else min(k, len(b.prefix))
    limit = 8 * k if a.has_rule else len(a.prefix)
    for jb in range(1, kb + 1):
        bm = b.member(jb)
        if qa is not None:
            if not _contains_point(bm, qa):
                return DepthReport(
                    "covering", False, k, certified=True, witness=jb,
                    note=f"every member of the first nest contains {fmt(qa)}, member {jb} of the second does not",
                )
            ja = _certified_index(a, qa, bm)
            if not ro_leq(a.member(ja), bm):  # pragma: no cover - guarded by the certificate
                raise AssertionError("certified covering index failed")
            found[jb] = ja
        else:
            ja = _first_member_below(a, bm, limit)
            if ja is None:
                return DepthReport(
                    "covering", False, kb, witness=jb,
                    note=f"inconclusive: no member of the first nest up to index {limit} lies below member {jb}",
                    details={"inconclusive": True},
                )
            found[jb] = ja
    certified = qa is not None and qa == qb
    return DepthReport(
        "covering", True, kb, certified=certified,
        theorem=TH_COINITIAL if certified else "",
        note="" if certified else f"verified for the first {kb} members",
        details={"indices": found},
    )


def nest_coinitial(a: Nest, b: Nest, k: int = DEFAULT_DEPTH) -> DepthReport:
    """Mutual covering."""
    ab, ba = nest_covering(a, b, k), nest_covering(b, a, k)
    if not ab.holds:
        return ab
    if not ba.holds:
        return ba
    cert = ab.certified and ba.certified
    return DepthReport("coinitial", True, k, certified=cert, theorem=TH_COINITIAL if cert else "")


# -- representatives -----------------------------------------------------------
def _separating_pair(nest: Nest) -> Optional[tuple[IntervalRegion, IntervalRegion]]:
    """Separated regions both overlapping every member, for a nest with several centres."""
    amb = nest.ambient
    qs = sorted({q for q in nest.rule.centers if amb.contains(q)})
    if len(qs) < 2:
        return None
    q1, q2 = qs[0], qs[1]
    i1, i2 = amb.piece_index(q1), amb.piece_index(q2)
    if i1 != i2:
        return amb.piece_region(i1), amb.piece_region(i2)
    d = (q2 - q1) / 3
    return regularize(amb, [(q1 - d, q1 + d)]), regularize(amb, [(q2 - d, q2 + d)])


def g_rep_certified(nest: Nest, p=None, k: int = DEFAULT_DEPTH, seed: int = 0, samples: int = 200) -> DepthReport:
    """Decide whether ``nest`` is a G-representative.

    r0 to r2 come from the prefix check.  r3 is certified for shrinking local
    bases; for nests with several centres a separated pair overlapping every
    member is constructed.  Otherwise r3 is only sampled.
    """
    prefix = nest_prefix_check(nest, k)
    if not prefix.holds:
        return DepthReport("g-representative", False, k, witness=prefix.witness, note="prefix check failed")
    rng = random.Random(seed)
    cert_ok, why = _certificate(nest, p)
    if cert_ok:
        q = nest.rule.centers[0]
        checked = 0
        for _ in range(samples):
            u, v = random_region(nest.ambient, rng), random_region(nest.ambient, rng)
            if overlaps_every_member(nest, u) and overlaps_every_member(nest, v):
                checked += 1
                if not (contact_T(u, v) and in_closure(u, q) and in_closure(v, q)):  # pragma: no cover
                    raise AssertionError(f"r3 rule contradicted by {u}, {v}")
        return DepthReport(
            "g-representative", True, k, certified=True, note=why, theorem=TH_R3,
            details={"sanity_pairs": checked},
        )
    if nest.has_rule and not nest.approximate:
        pair = _separating_pair(nest)
        if pair is not None:
            u, v = pair
            assert overlaps_every_member(nest, u) and overlaps_every_member(nest, v) and not contact_T(u, v)
            return DepthReport(
                "g-representative", False, k, certified=True, witness={"r3": (u, v)},
                note="both regions overlap every member yet are not in contact",
            )
    # depth-bounded sampling of r3
    ms = nest.members(k)
    for _ in range(samples):
        u, v = random_region(nest.ambient, rng), random_region(nest.ambient, rng)
        if all(ro_overlap(u, m) and ro_overlap(v, m) for m in ms) and not contact_T(u, v):
            return DepthReport(
                "g-representative", False, k, witness={"r3": (u, v)},
                note=f"pair overlaps the first {k} members but is separated (depth-bounded)",
            )
    return DepthReport("g-representative", True, k, note=f"no certificate ({why}); r3 sampled only")


def w_minimality_check(a: Nest, candidates: Sequence[Nest], k: int = DEFAULT_DEPTH) -> DepthReport:
    """For each candidate ``b`` covering-below ``a`` (``b`` covers ``a``), check ``a`` covers ``b``."""
    all_cert = True
    for idx, b in enumerate(candidates):
        below = nest_covering(b, a, k)
        if not below.holds:
            all_cert &= below.certified
            continue
        back = nest_covering(a, b, k)
        if not back.holds:
            return DepthReport(
                "w-minimality", False, k, certified=below.certified and back.certified,
                witness={"candidate": idx, "member": back.witness},
                note=f"candidate {idx} is strictly finer",
            )
        all_cert &= below.certified and back.certified
    return DepthReport("w-minimality", True, k, certified=False,
                       note="no finer candidate among those given" + ("" if all_cert else " (some checks depth-bounded)"))


def separation_refinement(nest: Nest, u: IntervalRegion, v: IntervalRegion, k: int = DEFAULT_DEPTH) -> DepthReport:
    """From separated ``u, v`` overlapping every member, build ``w_i = u_i * x_i``.

    ``u_0 = -v`` and ``u_{i+1}`` interpolates between ``u`` and ``u_i``; the
    result is an abstractive-set prefix covered by the nest but not covering it.
    """
    if contact_T(u, v):
        raise PreconditionError(f"{u} and {v} are in contact")
    if not (overlaps_every_member(nest, u) and overlaps_every_member(nest, v)):
        raise PreconditionError("both regions must overlap every member of the nest")
    xs = nest.members(k)
    us = [ro_complement(v)]
    for _ in range(1, k):
        us.append(ia_interpolant(u, us[-1]))
    ws = [ro_meet(ui, xi) for ui, xi in zip(us, xs)]
    checks = {
        "nonzero": next((i for i, w in enumerate(ws, 1) if not w), None),
        "chain": next(((i, j) for i, j in combinations(range(1, k + 1), 2) if not ll_T(ws[j - 1], ws[i - 1])), None),
        "decreasing": next((i for i in range(1, k) if not (ro_leq(ws[i], ws[i - 1]) and ws[i] != ws[i - 1])), None),
        # each x_j contains w_j
        "covered": next((j for j in range(1, k + 1) if not ro_leq(ws[j - 1], xs[j - 1])), None),
        # no w_i contains any x_j, since every x_j meets v and w_i misses it
        "not_covering": next(((i, j) for i in range(1, k + 1) for j in range(1, k + 1) if ro_leq(xs[j - 1], ws[i - 1])), None),
    }
    bad = {n: w for n, w in checks.items() if w is not None}
    details = {"checks": {n: w is None for n, w in checks.items()}, "prefix": ws[: min(k, 4)]}
    if bad:
        name, w = next(iter(bad.items()))
        return DepthReport("separation-refinement", False, k, witness={"check": name, "index": w}, details=details)
    return DepthReport(
        "separation-refinement", True, k,
        note=f"abstractive prefix of depth {k}, covered by the nest and not covering it",
        details=details,
    )
