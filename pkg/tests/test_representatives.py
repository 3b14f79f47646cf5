import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactlab.algebra import FiniteAlgebra, Region, atoms
from contactlab.checks import check_axiom
from contactlab.contact import d_contact, overlap_contact, total_contact
from contactlab.errors import AlgebraMismatchError, CapabilityError, PreconditionError
from contactlab.representatives import (
    RegionSet,
    check_bijection,
    check_coi_separ_ext,
    check_covering_equivalence,
    check_separated_parts,
    coinitial,
    covers,
    enumerate_g_representatives,
    equivalence_classes,
    filter_of,
    g_points,
    is_abstractive,
    is_g_representative,
    is_w_representative,
    w_minimality_check,
)
from contactlab.search.enumerate import all_bcas, all_bwcas, all_d_contacts

import oracles
from oracles import all_greps, code, from_code, model_of, up

AB = FiniteAlgebra(2, ("a0", "a1"))


def small_models():
    yield from all_bwcas()
    yield from all_bcas(3)
    yield from all_d_contacts(3)


def as_oracle_set(q: RegionSet) -> frozenset:
    return frozenset(from_code(c) for c in q.codes)


MODELS = list(small_models())


@pytest.mark.parametrize("cs", MODELS, ids=repr)
def test_g_representatives_match_oracle(cs):
    got = enumerate_g_representatives(cs)
    assert [q.mask for q in got] == [q.mask for q in enumerate_g_representatives(cs, method="brute")]
    assert {as_oracle_set(q) for q in got} == set(all_greps(model_of(cs)))


@pytest.mark.parametrize("cs", MODELS, ids=repr)
def test_quotient_structure(cs):
    greps = enumerate_g_representatives(cs)
    assert check_covering_equivalence(cs, greps).holds
    assert check_coi_separ_ext(cs, greps).holds
    rep = check_bijection(cs, greps)
    assert rep.holds
    classes = equivalence_classes(cs, greps)
    points = g_points(cs, greps)
    assert rep.details == {"classes": len(classes), "points": len(points)}
    assert len(classes) == len(points)
    # blocks partition Q_G and are exactly the coinitiality classes
    flat = [q for block in classes.classes for q in block]
    assert sorted(q.mask for q in flat) == [q.mask for q in greps]
    for q1 in greps:
        for q2 in greps:
            same = classes.class_of(q1) == classes.class_of(q2)
            assert same == coinitial(q1, q2)
            # coinitial iff some G-point contains both
            shared = any(all(r in p for r in q1) and all(r in p for r in q2) for p in points)
            assert same == shared


@pytest.mark.parametrize("cs", MODELS, ids=repr)
def test_filters_are_up_closures(cs):
    m = model_of(cs)
    for q in enumerate_g_representatives(cs):
        f = filter_of(cs, q)
        want = up(m, as_oracle_set(q))
        assert {from_code(r.code) for r in f.elements} == want
        assert cs.algebra.one in f and cs.algebra.zero not in f


@pytest.mark.parametrize("cs", MODELS, ids=repr)
def test_trimming_a_representative_below_a_region(cs):
    # every nonempty Q meet down-set of x is again a G-representative
    for q in enumerate_g_representatives(cs):
        for x in cs.algebra.regions():
            part = [r for r in q if r <= x]
            if part:
                assert is_g_representative(cs, part).holds


@pytest.mark.parametrize("cs", MODELS, ids=repr)
def test_atoms_under_c5_are_representatives(cs):
    c5 = check_axiom(cs, "C5").holds
    for a in atoms(cs.algebra):
        rep = is_g_representative(cs, [a])
        if c5:
            assert rep.holds
        assert rep.holds == cs.ll_code(a.code, a.code)


@st.composite
def model_and_subset(draw):
    cs = draw(st.sampled_from([m for m in MODELS if m.algebra.n <= 3]))
    mask = draw(st.integers(1, (1 << cs.algebra.size) - 1))
    return cs, RegionSet(cs.algebra, mask)


@given(model_and_subset())
def test_sets_covered_by_a_representative_satisfy_r3(arg):
    cs, X = arg
    for q in enumerate_g_representatives(cs):
        if covers(X, q):
            assert is_g_representative(cs, X).r3


@given(model_and_subset())
def test_g_check_matches_oracle_on_arbitrary_sets(arg):
    cs, X = arg
    assert is_g_representative(cs, X).holds == oracles.is_grep(model_of(cs), as_oracle_set(X))


# -- worked examples ------------------------------------------------------------------
def test_covers_direction():
    a0, one = AB.from_labels(["a0"]), AB.one
    X, Y = RegionSet.of(AB, [a0]), RegionSet.of(AB, [one])
    assert covers(X, Y) and not covers(Y, X)
    assert covers(X, X) and coinitial(X, X)


def test_overlap_whole_space_fails_r3():
    cs = overlap_contact(AB)
    rep = is_g_representative(cs, [AB.one])
    assert rep.r0 and rep.r1 and rep.r2 and not rep.r3
    assert rep.witnesses["r3"] == (AB.from_labels(["a0"]), AB.from_labels(["a1"]))


def test_report_witnesses():
    cs = total_contact(AB)
    a0, a1 = AB.from_labels(["a0"]), AB.from_labels(["a1"])
    rep = is_g_representative(cs, [AB.zero, a0, a1])
    assert not rep.r0 and rep.witnesses["r0"] == AB.zero
    assert not rep.r1 and set(rep.witnesses["r1"]) == {a0, a1}
    assert rep.r2 and not rep  # zero is well inside everything, so it serves as the inward witness
    rep = is_g_representative(cs, [a0])
    assert not rep.r2 and rep.witnesses["r2"] == a0
    with pytest.raises(ValueError):
        is_g_representative(cs, [])


@pytest.mark.parametrize("cs", list(all_d_contacts(3)), ids=repr)
def test_d_contact_has_d_as_representative(cs):
    d = Region(cs.algebra, cs.params["d"])
    assert is_g_representative(cs, [d]).holds
    assert filter_of(cs, [d]) in g_points(cs)


def test_total_contact_atoms_are_not_representatives():
    cs = total_contact(FiniteAlgebra(3))
    assert not check_axiom(cs, "C5").holds
    assert not any(is_g_representative(cs, [a]).holds for a in atoms(cs.algebra))


def test_filter_of_rejects_non_representatives():
    with pytest.raises(PreconditionError):
        filter_of(overlap_contact(AB), [AB.one])


def test_enumeration_cap():
    with pytest.raises(CapabilityError):
        enumerate_g_representatives(overlap_contact(FiniteAlgebra(5)))
    with pytest.raises(ValueError):
        enumerate_g_representatives(overlap_contact(AB), method="guess")


def test_region_sets_check_their_algebra():
    with pytest.raises(AlgebraMismatchError):
        RegionSet.of(AB, [FiniteAlgebra(3).one])
    with pytest.raises(AlgebraMismatchError):
        is_g_representative(overlap_contact(FiniteAlgebra(3)), RegionSet.of(AB, [AB.one]))
    q = RegionSet.of(AB, [1, 3])
    assert len(q) == 2 and AB.one in q and str(q) == "[{a0}, {a0,a1}]"


# -- abstractive sets --------------------------------------------------------------------
@given(model_and_subset())
def test_finite_sets_are_never_abstractive(arg):
    cs, A = arg
    rep = is_abstractive(cs, A)
    assert not rep.holds and not rep.a_literal
    assert rep.witnesses["a_literal"] == cs.algebra.zero
    meet = cs.algebra.one
    for r in A:
        meet = meet & r
    assert rep.a_nonzero == (meet == cs.algebra.zero)
    if not rep.a_nonzero:
        assert rep.witnesses["a_nonzero"] == meet
    # contrapositive of the strong inward condition: an abstractive set would satisfy it
    assert not (rep.r0 and rep.r1 and rep.a_nonzero) or rep.r2_strong
    assert not is_w_representative(cs, A).holds


def test_singleton_top_has_lower_bound_top():
    cs = overlap_contact(AB)
    rep = is_abstractive(cs, [AB.one])
    assert rep.witnesses["a_nonzero"] == AB.one


def test_w_minimality_is_vacuous_on_finite_algebras():
    cs = d_contact(AB, 1)
    rep = w_minimality_check(cs, [AB.one])
    assert rep.holds and rep.details["vacuous"] and "no abstractive sets" in rep.note


@pytest.mark.parametrize("cs", list(all_bwcas()), ids=repr)
def test_separated_parts_implication_has_no_finite_counterexample(cs):
    rep = check_separated_parts(cs)
    assert rep.holds and rep.details["atomless"] is False


def test_separated_parts_examples():
    rep = check_separated_parts(overlap_contact(FiniteAlgebra(3)))
    assert rep.details["conclusion"] is False  # atoms have no proper parts at all
    rep = check_separated_parts(total_contact(FiniteAlgebra(3)))
    assert rep.details["C5"] is False and rep.details["conclusion"] is False
    cs = overlap_contact(FiniteAlgebra(3))
    a0, a1 = cs.algebra.region(1), cs.algebra.region(2)
    assert not cs.c(a0.code, a1.code)
