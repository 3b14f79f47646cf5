"""Regular open subsets of a closed subspace of the real line, with exact endpoints.

The ambient space is a finite union of pairwise separated pieces, each a
closed interval ``[a, b]`` (``a`` or ``b`` may be infinite; the real line is
the single piece ``[-inf, inf]``) or an isolated point ``{c}``.

On an interval piece a region is a sorted tuple of pairs ``(lo, hi)`` with
``a <= lo < hi <= b`` and a positive gap between consecutive pairs.  The
pair stands for the relatively open set of points ``t`` of the piece with
``lo < t < hi``, *plus* the piece endpoint ``a`` when ``lo == a`` (and
``b`` when ``hi == b``).  Such finite unions are exactly the regular open
sets with finitely many components; the representation is canonical.
On a point piece a region is just a membership flag.

Endpoints are :class:`fractions.Fraction` or ``math.inf``/``-math.inf``.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from ..errors import AlgebraMismatchError, ParseError, PreconditionError

Number = Union[Fraction, float]
MAX_PIECES = 8
INF = math.inf


def num(v) -> Number:
    """Coerce ints, strings like ``"3/4"`` and fractions to exact endpoints."""
    if isinstance(v, float):
        if math.isinf(v):
            return v
        raise TypeError(f"finite floats are not exact endpoints: {v!r}; use Fraction or 'p/q'")
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "oo", "+oo"):
            return INF
        if s in ("-inf", "-oo"):
            return -INF
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {v!r}") from None
    return Fraction(v)


def fmt(v: Number) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(v)


@dataclass(frozen=True)
class IntervalPiece:
    lo: Number
    hi: Number

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval piece needs lo < hi, got [{fmt(self.lo)}, {fmt(self.hi)}]")

    def __str__(self):
        if self.lo == -INF and self.hi == INF:
            return "R"
        return f"[{fmt(self.lo)},{fmt(self.hi)}]"


@dataclass(frozen=True)
class PointPiece:
    at: Fraction

    @property
    def lo(self):
        return self.at

    @property
    def hi(self):
        return self.at

    def __str__(self):
        return "{" + fmt(self.at) + "}"


Piece = Union[IntervalPiece, PointPiece]


@dataclass(frozen=True)
class AmbientSpace:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=lambda p: p.lo))
        if not pieces:
            raise ValueError("ambient space needs at least one piece")
        if len(pieces) > MAX_PIECES:
            raise ValueError(f"at most {MAX_PIECES} pieces are supported")
        for p, q in zip(pieces, pieces[1:]):
            if not p.hi < q.lo:
                raise ValueError(f"pieces {p} and {q} are not separated by a gap")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def real_line(cls) -> "AmbientSpace":
        return cls((IntervalPiece(-INF, INF),))

    @classmethod
    def parse(cls, text: str) -> "AmbientSpace":
        return parse_ambient(text)

    def __str__(self):
        return "+".join(str(p) for p in self.pieces)

    @property
    def is_connected(self) -> bool:
        return len(self.pieces) == 1

    def isolated_points(self) -> list[int]:
        return [i for i, p in enumerate(self.pieces) if isinstance(p, PointPiece)]

    def contains(self, t: Number) -> bool:
        for p in self.pieces:
            if isinstance(p, PointPiece):
                if t == p.at:
                    return True
            elif p.lo <= t <= p.hi and not math.isinf(t):
                return True
        return False

    def piece_index(self, t: Number) -> Optional[int]:
        for i, p in enumerate(self.pieces):
            if isinstance(p, PointPiece) and t == p.at:
                return i
            if isinstance(p, IntervalPiece) and p.lo <= t <= p.hi and not math.isinf(t):
                return i
        return None

    def empty(self) -> "IntervalRegion":
        return IntervalRegion(self, tuple(() if isinstance(p, IntervalPiece) else False for p in self.pieces))

    def full(self) -> "IntervalRegion":
        return IntervalRegion(
            self, tuple(((p.lo, p.hi),) if isinstance(p, IntervalPiece) else True for p in self.pieces)
        )

    def piece_region(self, i: int) -> "IntervalRegion":
        """The (clopen) region consisting of piece ``i``."""
        parts = []
        for j, p in enumerate(self.pieces):
            if isinstance(p, IntervalPiece):
                parts.append(((p.lo, p.hi),) if j == i else ())
            else:
                parts.append(j == i)
        return IntervalRegion(self, tuple(parts))

    def point_region(self, c) -> "IntervalRegion":
        c = num(c)
        i = self.piece_index(c)
        if i is None or not isinstance(self.pieces[i], PointPiece):
            raise PreconditionError(f"{fmt(c)} is not an isolated point of {self}")
        return self.piece_region(i)

    def region(self, intervals: Iterable[tuple] = (), points: Iterable = ()) -> "IntervalRegion":
        return regularize(self, intervals, points)

    def literal(self, text: str) -> "IntervalRegion":
        return parse_region(self, text)


@dataclass(frozen=True)
class IntervalRegion:
    """A canonical regular open region of an :class:`AmbientSpace`."""

    ambient: AmbientSpace
    parts: tuple

    def _check(self, other: "IntervalRegion") -> None:
        if not isinstance(other, IntervalRegion):
            raise TypeError(f"expected an IntervalRegion, got {type(other).__name__}")
        if other.ambient != self.ambient:
            raise AlgebraMismatchError("regions live in different ambient spaces")

    def __and__(self, other):
        return ro_meet(self, other)

    def __or__(self, other):
        return ro_join(self, other)

    def __invert__(self):
        return ro_complement(self)

    def __bool__(self):
        return not is_zero(self)

    def intervals(self):
        """``(piece_index, lo, hi)`` for every interval component."""
        for i, part in enumerate(self.parts):
            if isinstance(self.ambient.pieces[i], IntervalPiece):
                for lo, hi in part:
                    yield i, lo, hi

    def points(self):
        return [
            self.ambient.pieces[i].at
            for i, part in enumerate(self.parts)
            if isinstance(self.ambient.pieces[i], PointPiece) and part
        ]

    def __str__(self):
        chunks = []
        for i, part in enumerate(self.parts):
            p = self.ambient.pieces[i]
            if isinstance(p, PointPiece):
                if part:
                    chunks.append("{" + fmt(p.at) + "}")
                continue
            for lo, hi in part:
                left = "[" if lo == p.lo and not math.isinf(lo) else "("
                right = "]" if hi == p.hi and not math.isinf(hi) else ")"
                chunks.append(f"{left}{fmt(lo)},{fmt(hi)}{right}")
        return "|".join(chunks) if chunks else "0"

    def __repr__(self):
        return f"IntervalRegion({self} in {self.ambient})"


# -- construction -----------------------------------------------------------
def _merge(pairs: Iterable[tuple]) -> tuple:
    """Sort and merge pairs whose closures meet (interior of closure of the union)."""
    out: list[list] = []
    for lo, hi in sorted(pairs):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def regularize(ambient: AmbientSpace, intervals: Iterable[tuple] = (), points: Iterable = ()) -> IntervalRegion:
    """Interior of the closure of a raw union of open intervals and isolated points.

    ``intervals`` are open intervals of the real line; each is traced on
    the ambient space before regularizing.  ``points`` must be isolated
    points of the ambient.
    """
    raw = []
    for lo, hi in intervals:
        lo, hi = num(lo), num(hi)
        if not lo < hi:
            raise ValueError(f"malformed interval ({fmt(lo)}, {fmt(hi)}): need lo < hi")
        raw.append((lo, hi))
    parts = []
    for p in ambient.pieces:
        if isinstance(p, PointPiece):
            parts.append(any(lo < p.at < hi for lo, hi in raw))
            continue
        clipped = [(max(lo, p.lo), min(hi, p.hi)) for lo, hi in raw]
        parts.append(_merge((lo, hi) for lo, hi in clipped if lo < hi))
    parts = list(parts)
    for c in points:
        c = num(c)
        i = ambient.piece_index(c)
        if i is None or not isinstance(ambient.pieces[i], PointPiece):
            raise PreconditionError(f"{fmt(c)} is not an isolated point of {ambient}")
        parts[i] = True
    return IntervalRegion(ambient, tuple(parts))


def is_canonical(r: IntervalRegion) -> bool:
    for i, part in enumerate(r.parts):
        p = r.ambient.pieces[i]
        if isinstance(p, PointPiece):
            if not isinstance(part, bool):
                return False
            continue
        for lo, hi in part:
            if not (p.lo <= lo < hi <= p.hi):
                return False
        for (_, h1), (l2, _) in zip(part, part[1:]):
            if not h1 < l2:
                return False
    return True


def is_zero(r: IntervalRegion) -> bool:
    return not any(r.parts)


# -- Boolean operations ------------------------------------------------------
def ro_meet(x: IntervalRegion, y: IntervalRegion) -> IntervalRegion:
    x._check(y)
    parts = []
    for i, p in enumerate(x.ambient.pieces):
        a, b = x.parts[i], y.parts[i]
        if isinstance(p, PointPiece):
            parts.append(a and b)
            continue
        out = []
        for l1, h1 in a:
            for l2, h2 in b:
                lo, hi = max(l1, l2), min(h1, h2)
                if lo < hi:
                    out.append((lo, hi))
        parts.append(_merge(out))
    return IntervalRegion(x.ambient, tuple(parts))


def ro_join(x: IntervalRegion, y: IntervalRegion) -> IntervalRegion:
    x._check(y)
    parts = []
    for i, p in enumerate(x.ambient.pieces):
        a, b = x.parts[i], y.parts[i]
        parts.append(a or b if isinstance(p, PointPiece) else _merge(a + b))
    return IntervalRegion(x.ambient, tuple(parts))


def ro_complement(x: IntervalRegion) -> IntervalRegion:
    parts = []
    for i, p in enumerate(x.ambient.pieces):
        part = x.parts[i]
        if isinstance(p, PointPiece):
            parts.append(not part)
            continue
        out = []
        cursor = p.lo
        for lo, hi in part:
            if cursor < lo:
                out.append((cursor, lo))
            cursor = hi
        if cursor < p.hi:
            out.append((cursor, p.hi))
        parts.append(tuple(out))
    return IntervalRegion(x.ambient, tuple(parts))


def ro_leq(x: IntervalRegion, y: IntervalRegion) -> bool:
    return ro_meet(x, y) == x


def ro_overlap(x: IntervalRegion, y: IntervalRegion) -> bool:
    return not is_zero(ro_meet(x, y))


# -- topology ------------------------------------------------------------------
def closure_pieces(x: IntervalRegion) -> list[tuple[int, Number, Number]]:
    """Closure as ``(piece, lo, hi)`` closed intervals (infinite ends excluded); points give ``lo == hi``."""
    out = [(i, lo, hi) for i, lo, hi in x.intervals()]
    for i, part in enumerate(x.parts):
        p = x.ambient.pieces[i]
        if isinstance(p, PointPiece) and part:
            out.append((i, p.at, p.at))
    return out


def contact_T(x: IntervalRegion, y: IntervalRegion) -> bool:
    """Topological contact: the closures meet."""
    x._check(y)
    for i, l1, h1 in closure_pieces(x):
        for j, l2, h2 in closure_pieces(y):
            if i == j and max(l1, l2) <= min(h1, h2):
                return True
    return False


def in_closure(x: IntervalRegion, t: Number) -> bool:
    """Whether the real point ``t`` lies in the closure of ``x``."""
    if math.isinf(t) or not x.ambient.contains(t):
        return False
    return any(lo <= t <= hi for _, lo, hi in closure_pieces(x))


def contact_by_points(x: IntervalRegion, y: IntervalRegion) -> bool:
    """Second route to contact: search a finite candidate set for a common closure point.

    A nonempty intersection of two finite unions of closed intervals
    contains one of their finite endpoints, unless both closures share an
    unbounded ray, which a point beyond all endpoints detects.
    """
    x._check(y)
    cands = set()
    for _, lo, hi in closure_pieces(x) + closure_pieces(y):
        for v in (lo, hi):
            if not math.isinf(v):
                cands.add(v)
    finite = sorted(cands) or [Fraction(0)]
    cands.update((finite[0] - 1, finite[-1] + 1))
    return any(in_closure(x, t) and in_closure(y, t) for t in cands)


def _inside(piece: IntervalPiece, lo, hi, l2, h2) -> bool:
    """Closed [lo, hi] (traced on the piece) lies in the relatively open pair (l2, h2)."""
    left = l2 < lo or (l2 == lo == piece.lo)
    right = hi < h2 or (hi == h2 == piece.hi)
    return left and right


def ll_T(x: IntervalRegion, y: IntervalRegion) -> bool:
    """Non-tangential inclusion: the closure of ``x`` lies inside ``y``."""
    x._check(y)
    for i, part in enumerate(x.parts):
        p = x.ambient.pieces[i]
        if isinstance(p, PointPiece):
            if part and not y.parts[i]:
                return False
            continue
        for lo, hi in part:
            if not any(_inside(p, lo, hi, l2, h2) for l2, h2 in y.parts[i]):
                return False
    return True


def measure(x: IntervalRegion) -> Number:
    """Total length of the interval components (isolated points add nothing)."""
    total: Number = Fraction(0)
    for _, lo, hi in x.intervals():
        total = total + (hi - lo) if not (math.isinf(lo) or math.isinf(hi)) else INF
    return total


def _between(a: Number, b: Number) -> Number:
    """A rational strictly between ``a < b`` (midpoint when both are finite)."""
    if math.isinf(a) and math.isinf(b):
        return Fraction(0)
    if math.isinf(a):
        return b - 1
    if math.isinf(b):
        return a + 1
    return (a + b) / 2


def ia_interpolant(x: IntervalRegion, y: IntervalRegion) -> IntervalRegion:
    """A region ``z`` with ``x << z << y``, built by padding each component of
    the closure of ``x`` halfway towards the enclosing component of ``y``."""
    if not ll_T(x, y):
        raise PreconditionError(f"{x} is not non-tangentially included in {y}")
    parts = []
    for i, part in enumerate(x.parts):
        p = x.ambient.pieces[i]
        if isinstance(p, PointPiece):
            parts.append(part)
            continue
        out = []
        for lo, hi in part:
            l2, h2 = next((l2, h2) for l2, h2 in y.parts[i] if _inside(p, lo, hi, l2, h2))
            new_lo = lo if lo == p.lo else _between(l2, lo)
            new_hi = hi if hi == p.hi else _between(hi, h2)
            out.append((new_lo, new_hi))
        parts.append(_merge(out))
    z = IntervalRegion(x.ambient, tuple(parts))
    assert ll_T(x, z) and ll_T(z, y)
    return z


def nontangential_part(x: IntervalRegion) -> Optional[IntervalRegion]:
    """A nonzero ``y << x``, or ``None`` when ``x`` is zero."""
    for i, part in enumerate(x.parts):
        p = x.ambient.pieces[i]
        if isinstance(p, PointPiece):
            if part:
                return x.ambient.piece_region(i)
            continue
        for lo, hi in part:
            mid = _between(lo, hi)
            a, b = _between(lo, mid), _between(mid, hi)
            parts = [() if isinstance(q, IntervalPiece) else False for q in x.ambient.pieces]
            parts[i] = ((a, b),)
            return IntervalRegion(x.ambient, tuple(parts))
    return None


# -- parsing -----------------------------------------------------------------
_NUM = r"[-+]?(?:inf|oo|\d+(?:/\d+)?)"
_AMB_PIECE = re.compile(rf"\s*(?:\[\s*({_NUM})\s*,\s*({_NUM})\s*\]|\{{\s*({_NUM})\s*\}})\s*")
_REG_PIECE = re.compile(rf"\s*(?:\(\s*({_NUM})\s*,\s*({_NUM})\s*\)|\{{\s*({_NUM})\s*\}})\s*")


def parse_ambient(text: str) -> AmbientSpace:
    """``"R"``, ``"[0,1]+[2,3]"``, ``"[0,1]+{2}"`` (``∪`` also accepted)."""
    s = text.strip()
    if s in ("R", "ℝ", "(-inf,inf)"):
        return AmbientSpace.real_line()
    pieces: list[Piece] = []
    for pos, chunk in _split(s, "+∪"):
        m = _AMB_PIECE.fullmatch(chunk)
        if not m:
            raise ParseError(f"bad ambient piece {chunk.strip()!r}", line=1, column=pos + 1)
        try:
            if m.group(3) is not None:
                pieces.append(PointPiece(num(m.group(3))))
            else:
                pieces.append(IntervalPiece(num(m.group(1)), num(m.group(2))))
        except ValueError as exc:
            raise ParseError(str(exc), line=1, column=pos + 1) from None
    try:
        return AmbientSpace(tuple(pieces))
    except ValueError as exc:
        raise ParseError(str(exc), line=1) from None


def parse_region(ambient: AmbientSpace, text: str) -> IntervalRegion:
    """``"(0,1)|(2,3)"``, ``"{2}"``; ``"0"`` is empty and ``"1"`` the whole space.

    Intervals are read as open intervals of the real line and regularized.
    """
    s = text.strip()
    if s in ("0", "∅"):
        return ambient.empty()
    if s in ("1", "X"):
        return ambient.full()
    intervals, points = [], []
    for pos, chunk in _split(s, "|"):
        m = _REG_PIECE.fullmatch(chunk)
        if not m:
            raise ParseError(f"bad region component {chunk.strip()!r}", line=1, column=pos + 1)
        if m.group(3) is not None:
            points.append(num(m.group(3)))
        else:
            intervals.append((num(m.group(1)), num(m.group(2))))
    try:
        return regularize(ambient, intervals, points)
    except ValueError as exc:
        raise ParseError(str(exc), line=1) from None


def _split(s: str, seps: str) -> list[tuple[int, str]]:
    out, start = [], 0
    for i, ch in enumerate(s):
        if ch in seps:
            out.append((start, s[start:i]))
            start = i + 1
    out.append((start, s[start:]))
    return out


# -- random regions ------------------------------------------------------------
def random_region(ambient: AmbientSpace, rng: random.Random, max_parts: int = 3, denominator: int = 4) -> IntervalRegion:
    """A random canonical region with endpoints on a rational grid.

    Unbounded pieces draw endpoints from ``[-4, 4]`` and occasionally use
    infinite ends.
    """
    intervals = []
    points = []
    for p in ambient.pieces:
        if isinstance(p, PointPiece):
            if rng.random() < 0.5:
                points.append(p.at)
            continue
        lo = p.lo if not math.isinf(p.lo) else Fraction(-4)
        hi = p.hi if not math.isinf(p.hi) else Fraction(4)
        steps = int((hi - lo) * denominator)
        for _ in range(rng.randint(0, max_parts)):
            i, j = sorted(rng.sample(range(-1, steps + 2), 2))
            a = lo + Fraction(i, denominator)
            b = lo + Fraction(j, denominator)
            if math.isinf(p.lo) and i <= 0 and rng.random() < 0.3:
                a = -INF
            if math.isinf(p.hi) and j >= steps and rng.random() < 0.3:
                b = INF
            intervals.append((a, b))
    return regularize(ambient, intervals, points)
