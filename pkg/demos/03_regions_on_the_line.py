#!/usr/bin/env python3
"""Regular open subsets of the line, with exact rational endpoints.

Regions are finite unions of open intervals (plus isolated points of the
ambient space, which are open there).  Contact is "closures meet".  A
point is approached by a nest of shrinking intervals; for rule-based nests
the depth-bounded checks are upgraded to certified statements.
"""
from fractions import Fraction

from contactlab.interval.checks import check_axioms_interval
from contactlab.interval.nest import (
    Nest,
    g_rep_certified,
    local_basis_certificate,
    nest_coinitial,
    nest_covering,
    separation_refinement,
)
from contactlab.interval.space import (
    contact_T,
    ia_interpolant,
    ll_T,
    parse_ambient,
    parse_region,
    regularize,
)

R = parse_ambient("R")
x = parse_region(R, "(0,1)")
y = parse_region(R, "(1,2)")
print("On the real line")
print(f"  x = {x}, y = {y}, x + y = {x | y}  (the gap at 1 is filled: interior of the closure)")
print(f"  -x = {~x}")
print(f"  x C y: {contact_T(x, y)}  (closures share 1); x o y: {bool(x & y)}")
raw = regularize(R, [(0, Fraction(1, 2)), (Fraction(1, 2), 1)])
print(f"  regularizing (0,1/2) u (1/2,1) gives {raw}")
small = parse_region(R, "(1/4,1/2)")
mid = ia_interpolant(small, x)
print(f"  {small} << {x}: {ll_T(small, x)}; an interpolant is {mid}")

print()
print("Axiom samples on three ambient spaces")
for text in ("R", "[0,1]+[2,3]", "[0,1]+{2}"):
    amb = parse_ambient(text)
    reps = check_axioms_interval(amb, 100, 0)
    bad = [f"{r.name} (witness {', '.join(map(str, r.witness))})" for r in reps if not r.holds]
    print(f"  {text:12s} " + ("all pass" if not bad else "fails " + "; ".join(bad)))

print()
print("Nests around 0")
h, odd = Nest.harmonic(0), Nest.odd_harmonic(0)
print(f"  harmonic: {', '.join(str(m) for m in h.members(4))}, ...")
print(f"  odd:      {', '.join(str(m) for m in odd.members(4))}, ...")
for rep in (g_rep_certified(h, 0), local_basis_certificate(h, 0), nest_coinitial(h, odd)):
    print(f"  {rep.name:24s} holds={rep.holds} certified={rep.certified}  {rep.theorem or rep.note}")
half = local_basis_certificate(h, Fraction(1, 2))
print(f"  around 1/2 instead: holds={half.holds}, first member missing 1/2 is index {half.witness}")

print()
print("A nest with two centres on [0,1]+[2,3]")
X = parse_ambient("[0,1]+[2,3]")
two = Nest.multi_harmonic([1, 2], ambient=X)
rep = g_rep_certified(two)
u, v = rep.witness["r3"]
print(f"  G-representative: holds={rep.holds} certified={rep.certified}, r3 witness {u} and {v}")
print("  Both pieces meet every member, yet the pieces are separated, so r3 fails.")
sep = separation_refinement(two, X.piece_region(0), X.piece_region(1), 32)
print(f"  refining with the left piece: {sep.note}")
print(f"  first members: {', '.join(str(w) for w in sep.details['prefix'])}")
one = Nest.harmonic(1, ambient=X)
print(f"  harmonic(1) covers the two-centre nest: {nest_covering(one, two).holds}; "
      f"the converse: {nest_covering(two, one).holds}")
