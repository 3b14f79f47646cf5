from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactlab.algebra import (
    MAX_ATOMS,
    FiniteAlgebra,
    Region,
    atoms,
    bits,
    down_set,
    is_atom,
    iter_subcodes,
    join_all,
    meet_all,
    permute_code,
    up_set,
)
from contactlab.errors import AlgebraMismatchError

from oracles import from_code
from strategies import algebras


@st.composite
def region_triples(draw):
    alg = draw(algebras(MAX_ATOMS))
    r = lambda: Region(alg, draw(st.integers(0, alg.top_code)))
    return r(), r(), r()


@given(region_triples())
def test_boolean_laws(t):
    x, y, z = t
    alg = x.algebra
    assert x & (y | z) == (x & y) | (x & z)
    assert x | (y & z) == (x | y) & (x | z)
    assert ~(x & y) == ~x | ~y
    assert ~~x == x
    assert x & ~x == alg.zero and x | ~x == alg.one
    assert (x <= y) == ((x & y) == x)
    assert (x < y) == (x <= y and x != y)


@given(region_triples())
def test_operations_agree_with_sets(t):
    x, y, _ = t
    top = frozenset(range(x.algebra.n))
    assert from_code((x & y).code) == from_code(x.code) & from_code(y.code)
    assert from_code((x | y).code) == from_code(x.code) | from_code(y.code)
    assert from_code((~x).code) == top - from_code(x.code)
    assert (x <= y) == (from_code(x.code) <= from_code(y.code))


@given(algebras(MAX_ATOMS))
def test_counts_and_atoms(alg):
    assert len(list(alg.regions())) == 2 ** alg.n
    assert [a.code for a in atoms(alg)] == [1 << i for i in range(alg.n)]
    assert sum(is_atom(r) for r in alg.regions()) == alg.n
    assert join_all(alg, atoms(alg)) == alg.one
    assert meet_all(alg, []) == alg.one and join_all(alg, []) == alg.zero


@given(region_triples())
def test_down_and_up_sets(t):
    x = t[0]
    assert down_set(x) == {r for r in x.algebra.regions() if r <= x}
    assert up_set(x) == {r for r in x.algebra.regions() if x <= r}
    assert sorted(iter_subcodes(x.code), reverse=True) == list(iter_subcodes(x.code))
    assert {Region(x.algebra, c) for c in iter_subcodes(x.code)} == down_set(x)


@given(st.integers(0, 2 ** 10 - 1))
def test_bits_lists_set_positions(mask):
    assert list(bits(mask)) == [i for i in range(10) if mask >> i & 1]


def test_permute_code_is_an_automorphism():
    for perm in permutations(range(3)):
        images = [permute_code(c, perm) for c in range(8)]
        assert sorted(images) == list(range(8))
        for a in range(8):
            for b in range(8):
                assert permute_code(a & b, perm) == images[a] & images[b]


def test_labels_and_printing():
    alg = FiniteAlgebra(3, ("a", "b", "c"))
    r = alg.from_labels(["a", "c"])
    assert r.code == 5 and str(r) == "{a,c}" and str(alg.zero) == "0"
    assert FiniteAlgebra(2).labels == ("a0", "a1")
    with pytest.raises(KeyError):
        alg.from_labels(["z"])


@pytest.mark.parametrize("bad", [
    lambda: FiniteAlgebra(-1),
    lambda: FiniteAlgebra(MAX_ATOMS + 1),
    lambda: FiniteAlgebra(2, ("a",)),
    lambda: FiniteAlgebra(2, ("a", "a")),
    lambda: Region(FiniteAlgebra(2), 4),
])
def test_rejects_malformed(bad):
    with pytest.raises(ValueError):
        bad()


def test_mixing_algebras_is_an_error():
    a, b = FiniteAlgebra(2), FiniteAlgebra(3)
    with pytest.raises(AlgebraMismatchError):
        a.one & b.one
    with pytest.raises(TypeError):
        a.one & 1
