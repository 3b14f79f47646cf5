"""Exhaustive enumeration of finite contact structures up to atom permutation."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator

from ..algebra import FiniteAlgebra, permute_code
from ..checks import BCA_AXIOMS, BWCA_AXIOMS, class_report
from ..contact import ContactStructure, atom_graph_contact, d_contact, relation_contact
from ..errors import CapabilityError

MAX_GRAPH_ATOMS = 4
MAX_RELATION_UNIVERSE = 8
UNIVERSES = (2, 4, 8)


def _labels(n: int) -> tuple[str, ...]:
    return tuple("abcd"[:n])


def algebra_for(n: int) -> FiniteAlgebra:
    return FiniteAlgebra(n, _labels(n))


# -- atom graphs (BCAs) --------------------------------------------------------
def _edge_mask(edges, index) -> int:
    return sum(1 << index[e] for e in edges)


def canonical_graph(n: int, edges: frozenset) -> tuple:
    """Lexicographically least sorted edge list over all relabellings."""
    best = None
    for perm in permutations(range(n)):
        image = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in edges))
        if best is None or image < best:
            best = image
    return best


def enumerate_bca(atom_count: int) -> Iterator[ContactStructure]:
    """One atom-graph contact per isomorphism class of graphs on ``atom_count`` atoms.

    Classes are yielded in order of their canonical edge lists; every
    yield is checked against C0-C4.
    """
    if not 1 <= atom_count <= MAX_GRAPH_ATOMS:
        raise CapabilityError(f"atom-graph enumeration supports 1 to {MAX_GRAPH_ATOMS} atoms, got {atom_count}")
    n = atom_count
    slots = list(combinations(range(n), 2))
    seen = set()
    for size in range(len(slots) + 1):
        for edges in combinations(slots, size):
            canon = canonical_graph(n, frozenset(edges))
            if canon in seen:
                continue
            seen.add(canon)
    alg = algebra_for(n)
    for canon in sorted(seen, key=lambda e: (len(e), e)):
        cs = atom_graph_contact(alg, canon)
        rep = class_report(cs, BCA_AXIOMS, "BCA")
        if not rep.holds:  # pragma: no cover - atom graphs always induce contacts
            raise AssertionError(f"atom graph {canon} fails {rep.note}")
        yield cs


# -- full relations (BWCAs) ----------------------------------------------------
@lru_cache(maxsize=None)
def _disjoint_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Unordered pairs of disjoint nonzero regions, largest first.

    Every BWCA relation contains overlap (C1 with C2 and C3), so the
    relation is fixed by which disjoint pairs it adds; that set must be
    upward closed (C3), which is why larger pairs are decided first.
    """
    size = 1 << n
    pairs = [(x, y) for x in range(1, size) for y in range(x + 1, size) if x & y == 0]
    return tuple(sorted(pairs, key=lambda p: (-(bin(p[0]).count("1") + bin(p[1]).count("1")), p)))


def _above(n: int, pair: tuple[int, int]) -> list[int]:
    """Indices of the disjoint pairs strictly above ``pair``."""
    pairs = _disjoint_pairs(n)
    x, y = pair
    out = []
    for i, (u, v) in enumerate(pairs):
        if (u, v) == (x, y):
            continue
        if (x & u == x and y & v == y) or (x & v == x and y & u == y):
            out.append(i)
    return out


def _rows(n: int, chosen: frozenset) -> tuple[int, ...]:
    size = 1 << n
    pairs = _disjoint_pairs(n)
    rows = [0] * size
    for x in range(1, size):
        for y in range(1, size):
            if x & y:
                rows[x] |= 1 << y
    for i in chosen:
        x, y = pairs[i]
        rows[x] |= 1 << y
        rows[y] |= 1 << x
    return tuple(rows)


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(permute_code(c, p) for c in range(1 << n)) for p in permutations(range(n)))


def _image(rows: tuple[int, ...], table: tuple[int, ...]) -> tuple[int, ...]:
    size = len(rows)
    out = [0] * size
    for x in range(size):
        r = 0
        for y in range(size):
            if rows[x] >> y & 1:
                r |= 1 << table[y]
        out[table[x]] = r
    return tuple(out)


def is_canonical(rows: tuple[int, ...], n: int) -> bool:
    """Whether ``rows`` is least among its images under atom permutations."""
    return all(_image(rows, t) >= rows for t in _perm_tables(n))


def _upsets(n: int) -> Iterator[frozenset]:
    pairs = _disjoint_pairs(n)
    above = [_above(n, p) for p in pairs]

    def walk(i: int, chosen: frozenset):
        if i == len(pairs):
            yield chosen
            return
        yield from walk(i + 1, chosen)
        # C3 pruning: a pair may join only if everything above it already has
        if all(j in chosen for j in above[i]):
            yield from walk(i + 1, chosen | {i})

    yield from walk(0, frozenset())


def enumerate_bwca(universe_size: int) -> Iterator[ContactStructure]:
    """One full-relation BWCA per isomorphism class on a universe of the given size."""
    if universe_size not in UNIVERSES:
        raise CapabilityError(f"full-relation enumeration supports universes {UNIVERSES}, got {universe_size}")
    n = universe_size.bit_length() - 1
    alg = algebra_for(n)
    found = sorted({rows for rows in (_rows(n, c) for c in _upsets(n)) if is_canonical(rows, n)})
    for rows in found:
        cs = relation_contact(alg, rows)
        rep = class_report(cs, BWCA_AXIOMS, "BWCA")
        if not rep.holds:  # pragma: no cover - guaranteed by construction
            raise AssertionError(f"enumerated relation fails {rep.note}")
        yield cs


def all_bwcas(max_universe: int = MAX_RELATION_UNIVERSE) -> Iterator[ContactStructure]:
    for u in UNIVERSES:
        if u <= max_universe:
            yield from enumerate_bwca(u)


def all_bcas(max_atoms: int = MAX_GRAPH_ATOMS) -> Iterator[ContactStructure]:
    for n in range(1, max_atoms + 1):
        yield from enumerate_bca(n)


def all_d_contacts(max_atoms: int = MAX_GRAPH_ATOMS) -> Iterator[ContactStructure]:
    """Every d-contact on algebras with 1 to ``max_atoms`` atoms, for every nonzero d."""
    if max_atoms > MAX_GRAPH_ATOMS:
        raise CapabilityError(f"d-contact family is capped at {MAX_GRAPH_ATOMS} atoms")
    for n in range(1, max_atoms + 1):
        alg = algebra_for(n)
        for d in range(1, alg.size):
            yield d_contact(alg, d)


FAMILIES = {
    "bwca": all_bwcas,
    "bca": all_bcas,
    "d_contact": all_d_contacts,
}
