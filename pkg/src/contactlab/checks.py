"""Exhaustive decision procedures for contact axioms and derived properties.

Each property is a universally quantified sentence whose body is an
*instance predicate* over region codes.  :func:`check_axiom` and the
``check_*`` helpers walk the variables in lexicographic code order and
report the first instance that evaluates to false; :func:`recheck`
re-evaluates a stored witness through the same predicate table.
"""
from __future__ import annotations

from enum import Enum
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .algebra import Region, bits
from .contact import ContactStructure
from .errors import CapabilityError, PreconditionError
from .reports import CheckReport

GIA_DIRECT_CAP = 16


class Axiom(str, Enum):
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    IA = "IA"
    GIA = "GIA"
    EXT = "EXT"
    DISC = "DISC"


BWCA_AXIOMS = (Axiom.C0, Axiom.C1, Axiom.C2, Axiom.C3)
BCA_AXIOMS = BWCA_AXIOMS + (Axiom.C4,)


# -- instance predicates ----------------------------------------------------
# Each takes the structure followed by region codes (or, for the
# set-quantified sentences, a bitmask over region codes).

def _leq(x: int, y: int) -> bool:
    return x & y == x


def _exists_nt_part(cs, x):
    return any(cs.ll_rows[y] >> x & 1 for y in range(1, cs.algebra.size))


def _column(cs, x):
    return [cs.rows[z] >> x & 1 for z in range(cs.algebra.size)]


def _meet_of(cs, mask):
    m = cs.algebra.top_code
    for y in bits(mask):
        m &= y
    return m


def _join_of(mask):
    j = 0
    for y in bits(mask):
        j |= y
    return j


def _gia_instance(cs, x, ymask):
    if ymask & ~cs.ll_rows[x]:
        return True
    return any(ymask & ~cs.ll_rows[z] == 0 for z in bits(cs.ll_rows[x]))


def _meet_form_instance(cs, x, jmask):
    if jmask & ~cs.ll_rows[x]:
        return True
    return cs.ll_code(x, _meet_of(cs, jmask))


def _gen_c4_instance(cs, x, jmask):
    if not cs.c(x, _join_of(jmask)):
        return True
    return any(cs.c(x, y) for y in bits(jmask))


INSTANCES: dict[str, Callable[..., bool]] = {
    "C0": lambda cs, x: not cs.c(0, x),
    "C1": lambda cs, x, y: not (_leq(x, y) and x != 0) or cs.c(x, y),
    "C2": lambda cs, x, y: not cs.c(x, y) or cs.c(y, x),
    "C3": lambda cs, x, y, z: not (_leq(x, y) and cs.c(z, x)) or cs.c(z, y),
    "C4": lambda cs, x, y, z: not cs.c(x, y | z) or cs.c(x, y) or cs.c(x, z),
    "C5": lambda cs, x: x == 0 or _exists_nt_part(cs, x),
    "C6": lambda cs, x: x in (0, cs.algebra.top_code) or cs.c(x, cs.algebra.top_code & ~x),
    "IA": lambda cs, x, y: not cs.ll_code(x, y)
    or any(cs.ll_code(z, y) for z in bits(cs.ll_rows[x])),
    "EXT": lambda cs, x, y: _column(cs, x) != _column(cs, y) or x == y,
    "DISC": lambda cs, x: x == cs.algebra.top_code
    or any(not cs.c(x, y) for y in range(1, cs.algebra.size)),
    "GIA": _gia_instance,
    # derived facts about <<
    "fact1": lambda cs, x, y: not cs.ll_code(x, y) or _leq(x, y),
    "fact2": lambda cs, x, y: not (cs.ll_code(x, y) and cs.ll_code(y, x)) or x == y,
    "fact3": lambda cs, x, y, z: not (cs.ll_code(x, y) and _leq(y, z)) or cs.ll_code(x, z),
    "fact4": lambda cs, x, y, z: not (_leq(x, y) and cs.ll_code(y, z)) or cs.ll_code(x, z),
    "fact5": lambda cs, x, y, z: not (cs.ll_code(x, y) and cs.ll_code(y, z)) or cs.ll_code(x, z),
    "fact6": lambda cs, x, y: cs.ll_code(x, y)
    == cs.ll_code(cs.algebra.top_code & ~y, cs.algebra.top_code & ~x),
    "ll_strict": lambda cs, x, y: x in (0, cs.algebra.top_code) or not cs.ll_code(x, y) or (_leq(x, y) and x != y),
    "ll_product_strict": lambda cs, x, u, y, v: not (x != u and cs.ll_code(x, u) and cs.ll_code(y, v))
    or (cs.ll_code(x & y, u & v) and (x & y) != (u & v)),
    # the product form with the extra guard x.y != 0
    "ll_product_strict_nonzero": lambda cs, x, u, y, v: not (
        x != u and (x & y) != 0 and cs.ll_code(x, u) and cs.ll_code(y, v)
    )
    or (cs.ll_code(x & y, u & v) and (x & y) != (u & v)),
    "ll_sum_prod": lambda cs, x, u, y, v: not (cs.ll_code(x, u) and cs.ll_code(y, v)) or cs.ll_code(x & y, u & v),
    "meet_form": _meet_form_instance,
    "gen_c4": _gen_c4_instance,
}

ARITY = {
    "C0": 1, "C1": 2, "C2": 2, "C3": 3, "C4": 3, "C5": 1, "C6": 1, "IA": 2, "EXT": 2, "DISC": 1,
    "fact1": 2, "fact2": 2, "fact3": 3, "fact4": 3, "fact5": 3, "fact6": 2,
    "ll_strict": 2, "ll_product_strict": 4, "ll_product_strict_nonzero": 4, "ll_sum_prod": 4,
}

FACT_TEXT = {
    "fact1": "x << y -> x <= y",
    "fact2": "x << y & y << x -> x = y",
    "fact3": "x << y & y <= z -> x << z",
    "fact4": "x <= y & y << z -> x << z",
    "fact5": "x << y & y << z -> x << z",
    "fact6": "x << y <-> -y << -x",
}


def _codes_of(cs: ContactStructure, witness: tuple) -> list:
    out = []
    for w in witness:
        if isinstance(w, Region):
            out.append(w.code)
        elif isinstance(w, (frozenset, set)):
            out.append(sum(1 << r.code for r in w))
        else:
            out.append(int(w))
    return out


def _regions_of(cs: ContactStructure, codes: Iterable[int]) -> tuple[Region, ...]:
    return tuple(Region(cs.algebra, c) for c in codes)


def _set_of(cs: ContactStructure, mask: int) -> frozenset[Region]:
    return frozenset(Region(cs.algebra, c) for c in bits(mask))


def recheck(cs: ContactStructure, report: CheckReport) -> bool:
    """Re-evaluate a failed report's sentence body at its witness."""
    name = report.details.get("instance", report.name)
    return INSTANCES[name](cs, *_codes_of(cs, report.witness))


def _first_failure(cs: ContactStructure, name: str, domain: Iterator[tuple]) -> Optional[tuple]:
    pred = INSTANCES[name]
    for args in domain:
        if not pred(cs, *args):
            return args
    return None


def _full_domain(cs: ContactStructure, arity: int) -> Iterator[tuple]:
    return product(range(cs.algebra.size), repeat=arity)


def check_property(cs: ContactStructure, name: str, note: str = "") -> CheckReport:
    """Exhaustively check one registered first-order property."""
    bad = _first_failure(cs, name, _full_domain(cs, ARITY[name]))
    if bad is None:
        return CheckReport(name, True, note=note)
    return CheckReport(name, False, _regions_of(cs, bad), note=note)


# -- set-quantified sentences (vectorised over all subsets) -------------------
def _subset_codes(size: int) -> np.ndarray:
    if size > GIA_DIRECT_CAP:
        raise CapabilityError(
            f"direct quantification over all subsets needs a universe of at most {GIA_DIRECT_CAP} regions, got {size}"
        )
    return np.arange(1 << size, dtype=np.int64)


def _subset_meets(cs: ContactStructure, ys: np.ndarray) -> np.ndarray:
    meets = np.full(ys.shape, cs.algebra.top_code, dtype=np.int64)
    for c in range(cs.algebra.size):
        sel = (ys >> c) & 1 == 1
        meets[sel] &= c
    return meets


def _subset_joins(cs: ContactStructure, ys: np.ndarray) -> np.ndarray:
    joins = np.zeros(ys.shape, dtype=np.int64)
    for c in range(cs.algebra.size):
        sel = (ys >> c) & 1 == 1
        joins[sel] |= c
    return joins


def _gia_direct(cs: ContactStructure) -> Optional[tuple[int, int]]:
    ys = _subset_codes(cs.algebra.size)
    for x in range(cs.algebra.size):
        u = cs.ll_rows[x]
        premise = (ys & ~u) == 0
        ok = np.zeros(ys.shape, dtype=bool)
        for z in bits(u):
            ok |= (ys & ~cs.ll_rows[z]) == 0
        bad = premise & ~ok
        if bad.any():
            return x, int(np.argmax(bad))
    return None


def _gia_reduced(cs: ContactStructure) -> Optional[tuple[int, int]]:
    # the hardest family for a given x is Y = {y : x << y}
    for x in range(cs.algebra.size):
        if not _gia_instance(cs, x, cs.ll_rows[x]):
            return x, cs.ll_rows[x]
    return None


def check_axiom(cs: ContactStructure, ax: Axiom | str, mode: str = "direct") -> CheckReport:
    """Decide one axiom by exhaustive evaluation.

    GIA quantifies over every subset of the universe.  ``mode="direct"``
    evaluates all of them (universe capped at 16 regions);
    ``mode="reduced"`` tests only the largest admissible family for each
    ``x``, which is sufficient because shrinking the family weakens the
    conclusion.
    """
    ax = Axiom(ax)
    name = ax.value
    if ax is Axiom.GIA:
        if mode == "direct":
            bad = _gia_direct(cs)
        elif mode == "reduced":
            bad = _gia_reduced(cs)
        else:
            raise ValueError(f"unknown GIA mode {mode!r}")
        if bad is None:
            return CheckReport(name, True, note=f"mode={mode}")
        x, ymask = bad
        return CheckReport(name, False, (Region(cs.algebra, x), _set_of(cs, ymask)), note=f"mode={mode}")
    return check_property(cs, name)


def holds(cs: ContactStructure, ax: Axiom | str) -> bool:
    return check_axiom(cs, ax).holds


def class_report(cs: ContactStructure, axioms: Iterable[Axiom], name: str) -> CheckReport:
    """First failing axiom of a list, or a passing report."""
    for ax in axioms:
        rep = check_axiom(cs, ax)
        if not rep.holds:
            return CheckReport(name, False, rep.witness, note=f"{ax.value} fails", details={"instance": ax.value})
    return CheckReport(name, True)


def is_bwca(cs: ContactStructure) -> bool:
    return class_report(cs, BWCA_AXIOMS, "BWCA").holds


def is_bca(cs: ContactStructure) -> bool:
    return class_report(cs, BCA_AXIOMS, "BCA").holds


def diagnose_not_contact(relation: ContactStructure) -> CheckReport:
    """Report the first of C0-C4 that fails, with its witness."""
    for ax in BCA_AXIOMS:
        rep = check_axiom(relation, ax)
        if not rep.holds:
            return rep
    return CheckReport("contact", True, note="C0-C4 all hold")


def verify_facts(cs: ContactStructure) -> list[CheckReport]:
    """The BWCA precondition followed by the six standard facts about ``<<``."""
    out = [class_report(cs, BWCA_AXIOMS, "BWCA")]
    for name, text in FACT_TEXT.items():
        out.append(check_property(cs, name, note=text))
    return out


def _agreement(name: str, values: dict[str, bool], note: str = "") -> CheckReport:
    same = len(set(values.values())) == 1
    if same:
        return CheckReport(name, True, note=note, details=dict(values))
    return CheckReport(name, False, tuple(values.items()), note=note, details=dict(values))


def check_equiv_c5_disc_ext(cs: ContactStructure) -> CheckReport:
    if not is_bwca(cs):
        raise PreconditionError("the C5/DISC/EXT equivalence is stated for weak contact algebras")
    values = {a: check_axiom(cs, a).holds for a in ("C5", "DISC", "EXT")}
    return _agreement("C5<->DISC<->EXT", values)


def check_c6_equivalences(cs: ContactStructure, product_form: Optional[bool] = None) -> CheckReport:
    """Compare C6 with its strict-``<<`` reformulation and, on BCAs, with the product form.

    ``product_form=None`` includes the product form exactly when C4 holds;
    ``True`` on a structure without C4 raises :class:`CapabilityError`.
    """
    if not is_bwca(cs):
        raise PreconditionError("C6 reformulations are stated for weak contact algebras")
    c4 = check_axiom(cs, Axiom.C4).holds
    if product_form is None:
        product_form = c4
    elif product_form and not c4:
        raise CapabilityError("the product-strictness form of C6 is only equivalent on contact algebras (C4)")
    values = {"C6": check_axiom(cs, Axiom.C6).holds, "ll_strict": check_property(cs, "ll_strict").holds}
    if product_form:
        values["ll_product_strict"] = check_property(cs, "ll_product_strict").holds
    return _agreement("C6-equivalences", values)


def check_ll_sum_prod(cs: ContactStructure) -> CheckReport:
    """``x << u & y << v -> x.y << u.v`` over all quadruples."""
    size = cs.algebra.size
    for x in range(size):
        for u in bits(cs.ll_rows[x]):
            for y in range(size):
                for v in bits(cs.ll_rows[y]):
                    if not cs.ll_code(x & y, u & v):
                        return CheckReport(
                            "ll_sum_prod", False, _regions_of(cs, (x, u, y, v)), note="x << u & y << v -> x.y << u.v"
                        )
    return CheckReport("ll_sum_prod", True, note="x << u & y << v -> x.y << u.v")


def _gen_c4(cs: ContactStructure, mode: str) -> CheckReport:
    size = cs.algebra.size
    if mode == "direct":
        ys = _subset_codes(size)
        joins = _subset_joins(cs, ys)
        for x in range(size):
            row = cs.rows[x]
            touches_join = (np.right_shift(row, joins) & 1) == 1
            touches_member = (ys & row) != 0
            bad = touches_join & ~touches_member
            if bad.any():
                return CheckReport("gen_c4", False, (Region(cs.algebra, x), _set_of(cs, int(np.argmax(bad)))))
        return CheckReport("gen_c4", True)
    for x in range(size):
        far = (1 << size) - 1 & ~cs.rows[x]
        if not _gen_c4_instance(cs, x, far):
            return CheckReport("gen_c4", False, (Region(cs.algebra, x), _set_of(cs, far)))
    return CheckReport("gen_c4", True)


def check_gia_meet_form(cs: ContactStructure, mode: str = "fast") -> CheckReport:
    """``(for all y in J) x << y  ->  x << meet(J)`` for every x and J.

    ``mode="fast"`` tests only ``J = {y : x << y}``; by the right
    monotonicity of ``<<`` in weak contact algebras this decides the
    sentence.  ``mode="direct"`` enumerates every J.  The report's
    details carry the generalized-C4 form ``x C join(J) -> some y in J
    with x C y`` decided the same way.
    """
    size = cs.algebra.size
    witness = None
    if mode == "direct":
        ys = _subset_codes(size)
        meets = _subset_meets(cs, ys)
        for x in range(size):
            u = cs.ll_rows[x]
            premise = (ys & ~u) == 0
            concl = (np.right_shift(u, meets) & 1) == 1
            bad = premise & ~concl
            if bad.any():
                witness = (x, int(np.argmax(bad)))
                break
    elif mode == "fast":
        for x in range(size):
            if not _meet_form_instance(cs, x, cs.ll_rows[x]):
                witness = (x, cs.ll_rows[x])
                break
    else:
        raise ValueError(f"unknown meet-form mode {mode!r}")
    gen = _gen_c4(cs, mode)
    details = {"instance": "meet_form", "mode": mode, "generalized_c4": gen.holds}
    if not gen.holds:
        details["generalized_c4_witness"] = gen.witness
    if witness is None:
        return CheckReport("GIA-meet-form", True, details=details)
    x, jmask = witness
    return CheckReport("GIA-meet-form", False, (Region(cs.algebra, x), _set_of(cs, jmask)), details=details)
