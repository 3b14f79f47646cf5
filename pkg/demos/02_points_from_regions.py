#!/usr/bin/env python3
"""Points as shrinking families of regions, on finite algebras.

A G-representative is a <<-chain of nonzero regions, each with a smaller
member well inside it, such that any two regions meeting every member are
in contact.  Its upward closure is a G-point.  On a finite algebra the
chains are short, so everything can be listed.
"""
from contactlab.algebra import FiniteAlgebra, atoms
from contactlab.contact import atom_graph_contact, d_contact, overlap_contact
from contactlab.representatives import (
    covers,
    enumerate_g_representatives,
    equivalence_classes,
    filter_of,
    g_points,
    is_g_representative,
    is_w_representative,
)

alg = FiniteAlgebra(3, ("a", "b", "c"))
over = overlap_contact(alg)


def least(point):
    """A G-point on a finite algebra is principal; name it by its least region."""
    return min(point.elements, key=lambda r: bin(r.code).count("1"))


print("Overlap contact on three atoms")
greps = enumerate_g_representatives(over)
for q in greps:
    print(f"  G-representative {q}   G-point: everything above {least(filter_of(over, q))}")
print(f"  {len(g_points(over, greps))} G-points: one per atom, as expected for a discrete space")

print()
print("Two disjoint regions do not form one: r1 asks for a <<-chain.")
rep = is_g_representative(over, [alg.from_labels("a"), alg.from_labels("b")])
print(f"  {{a}}, {{b}}: r1={rep.r1}, holds={rep.holds}, witnesses={rep.witnesses}")

print()
print("Covering: X covers Y when every member of Y contains a member of X.")
cls = equivalence_classes(over, greps)
print(f"  classes under mutual covering: {len(cls.classes)}")
x, y, z = greps[0], greps[2], greps[4]
for p, q in [(x, y), (y, x), (x, z)]:
    print(f"  covers({p}, {q}) = {covers(p, q)}")

print()
print("Atoms and abstraction")
for atom in atoms(alg):
    g = is_g_representative(over, [atom]).holds
    w = is_w_representative(over, [atom]).holds
    print(f"  {atom}: G-representative={g}, W-representative={w}")
print("  A finite family always has its last member as a nonzero lower bound,")
print("  so it is never abstractive and the W side is empty.")

print()
print("d-contact with d a proper region: {d} gives a G-point, but not the only one")
two = FiniteAlgebra(2, ("a", "b"))
dc = d_contact(two, two.from_labels("a"))
points = g_points(dc)
print(f"  d = {{a}} on atoms a, b: {len(points)} G-points")
for p in sorted(points, key=str):
    print(f"    everything above {least(p)}")
print("  {b} is disjoint from d, so it is well inside itself and pins a second point.")

print()
path = atom_graph_contact(alg, [(0, 1), (1, 2)])
print(f"Path a-b-c: {len(g_points(path))} G-points")
print("  The least member of a finite G-representative must be well inside itself.")
print("  On a connected path only the top is, and {a}, {c} meet it while staying apart.")
