"""Axiom reports for the topological contact on an ambient subspace of the line."""
from __future__ import annotations

import random
from typing import Optional

from ..reports import CheckReport
from .space import (
    AmbientSpace,
    IntervalRegion,
    contact_T,
    ia_interpolant,
    ll_T,
    nontangential_part,
    random_region,
    ro_complement,
    ro_join,
    ro_leq,
    ro_meet,
)


def _sampler(ambient: AmbientSpace, rng: random.Random):
    specials = [ambient.empty(), ambient.full()] + [ambient.piece_region(i) for i in range(len(ambient.pieces))]

    def draw() -> IntervalRegion:
        if rng.random() < 0.15:
            return rng.choice(specials)
        return random_region(ambient, rng)

    return draw


def _first(cases, pred) -> Optional[tuple]:
    return next((c for c in cases if not pred(*c)), None)


def _report(name: str, witness, checked: int, how: str) -> CheckReport:
    if witness is None:
        return CheckReport(name, True, note=f"{how}", details={"cases": checked})
    return CheckReport(name, False, witness=witness, note=how, details={"cases": checked})


def check_axioms_interval(ambient: AmbientSpace, budget: int = 200, seed: int = 0) -> list[CheckReport]:
    """Reports for C0-C6, IA and atomlessness of the regular open algebra of ``ambient``.

    C0-C4 and IA are checked on ``budget`` random cases each; C5, C6 and
    atomlessness are decided exactly.
    """
    rng = random.Random(seed)
    draw = _sampler(ambient, rng)
    sampled = f"sampled, seed {seed}"
    pairs = [(draw(), draw()) for _ in range(budget)]
    triples = [(draw(), draw(), draw()) for _ in range(budget)]
    out = []

    out.append(_report("C0", _first(pairs, lambda x, y: not contact_T(x, y) or (bool(x) and bool(y))), budget, sampled))
    # C1 needs x <= y, so build y above x
    c1 = [(x, ro_join(x, y)) for x, y in pairs]
    out.append(_report("C1", _first(c1, lambda x, y: not x or contact_T(x, y)), budget, sampled))
    out.append(_report("C2", _first(pairs, lambda x, y: contact_T(x, y) == contact_T(y, x)), budget, sampled))
    c3 = [(x, ro_join(x, y), z) for x, y, z in triples]
    out.append(_report("C3", _first(c3, lambda x, y, z: not contact_T(z, x) or contact_T(z, y)), budget, sampled))
    out.append(_report(
        "C4",
        _first(triples, lambda x, y, z: not contact_T(x, ro_join(y, z)) or contact_T(x, y) or contact_T(x, z)),
        budget, sampled,
    ))

    # C5 holds on every supported ambient: each nonzero region has a
    # nonzero part well inside it (midpoint shrink, or an isolated point).
    singles = [(x,) for x, _ in pairs] + [(ambient.piece_region(i),) for i in range(len(ambient.pieces))]

    def c5(x):
        y = nontangential_part(x)
        return not x or (y is not None and bool(y) and ll_T(y, x))

    out.append(_report("C5", _first(singles, c5), len(singles), "decided by the constructive shrink"))

    # C6 holds iff the ambient is connected
    if ambient.is_connected:
        out.append(CheckReport("C6", True, note="ambient is connected"))
    else:
        x = ambient.piece_region(0)
        assert not contact_T(x, ro_complement(x))
        out.append(CheckReport("C6", False, witness=(x,), note="a component is clopen"))

    def ll_pair(y, r):
        core = nontangential_part(y)
        return (ro_meet(core, r) if core is not None else ambient.empty()), y

    ia_cases = [ll_pair(y, r) for y, r in pairs]

    def ia(x, y):
        z = ia_interpolant(x, y)
        return ll_T(x, z) and ll_T(z, y)

    out.append(_report("IA", _first(ia_cases, ia), budget, f"midpoint interpolant, {sampled}"))

    iso = ambient.isolated_points()
    if iso:
        atom = ambient.piece_region(iso[0])
        assert all(ro_leq(atom, y) or not ro_meet(atom, y) for y, _ in pairs)
        out.append(CheckReport("atomless", False, witness=(atom,), note="an isolated point is an atom"))
    else:
        out.append(CheckReport("atomless", True, note="no isolated points"))
    return out
