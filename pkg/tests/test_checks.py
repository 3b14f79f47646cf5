from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactlab.algebra import FiniteAlgebra, Region
from contactlab.checks import (
    ARITY,
    INSTANCES,
    FACT_TEXT,
    Axiom,
    CapabilityError,
    check_axiom,
    check_c6_equivalences,
    check_equiv_c5_disc_ext,
    check_gia_meet_form,
    check_ll_sum_prod,
    check_property,
    is_bca,
    is_bwca,
    recheck,
    verify_facts,
)
from contactlab.contact import (
    atom_graph_contact,
    d_contact,
    full_contact,
    overlap_contact,
    relation_contact,
    total_contact,
)
from contactlab.errors import PreconditionError
from contactlab.search.enumerate import all_bcas, all_bwcas, all_d_contacts

import oracles
from oracles import axioms, code, fact_failures, from_code, gia, meet_form, model_of

FIRST_ORDER = ["C0", "C1", "C2", "C3", "C4", "C5", "C6", "IA", "EXT", "DISC"]
ABC = FiniteAlgebra(3, ("a", "b", "c"))


def small_models():
    yield from all_bwcas()
    yield from all_bcas(3)
    yield from all_d_contacts(3)


@st.composite
def random_relations(draw, n=3):
    """Any symmetric relation avoiding zero, not necessarily a contact."""
    alg = FiniteAlgebra(n, tuple("abc"[:n]))
    nz = range(1, alg.size)
    slots = [(x, y) for x in nz for y in nz if x <= y]
    chosen = draw(st.sets(st.sampled_from(slots)))
    rows = [0] * alg.size
    for x, y in chosen:
        rows[x] |= 1 << y
        rows[y] |= 1 << x
    return relation_contact(alg, tuple(rows))


@pytest.mark.parametrize("cs", list(small_models()), ids=repr)
def test_axioms_match_oracle_on_enumerated_models(cs):
    m = model_of(cs)
    want = axioms(m)
    for ax in FIRST_ORDER:
        assert check_axiom(cs, ax).holds == want[ax], ax
    assert check_axiom(cs, "GIA").holds == gia(m)
    assert check_gia_meet_form(cs, "direct").holds == meet_form(m)


@given(random_relations())
def test_axioms_match_oracle_on_arbitrary_relations(cs):
    want = axioms(model_of(cs))
    for ax in FIRST_ORDER:
        rep = check_axiom(cs, ax)
        assert rep.holds == want[ax], ax
        if not rep.holds:
            assert not recheck(cs, rep)


@given(random_relations(n=2))
def test_gia_modes_agree(cs):
    assert check_axiom(cs, "GIA", mode="direct").holds == check_axiom(cs, "GIA", mode="reduced").holds
    assert check_axiom(cs, "GIA").holds == gia(model_of(cs))


@pytest.mark.parametrize("cs", list(small_models()), ids=repr)
def test_meet_form_modes_agree(cs):
    fast, direct = check_gia_meet_form(cs, "fast"), check_gia_meet_form(cs, "direct")
    assert fast.holds == direct.holds
    assert fast.details["generalized_c4"] == direct.details["generalized_c4"]


def test_gia_direct_mode_is_capped():
    cs = overlap_contact(FiniteAlgebra(5))
    with pytest.raises(CapabilityError):
        check_axiom(cs, "GIA", mode="direct")
    assert check_axiom(cs, "GIA", mode="reduced").holds
    with pytest.raises(ValueError):
        check_axiom(cs, "GIA", mode="sideways")


def test_failed_reports_carry_rechecked_witnesses():
    cs = d_contact(ABC, ABC.from_labels(["a", "b"]))
    rep = check_axiom(cs, "C5")
    assert not rep.holds and len(rep.witness) == 1
    assert not recheck(cs, rep)
    assert rep.witness[0] != ABC.zero


# -- worked examples -----------------------------------------------------------------
@pytest.mark.parametrize("n", [2, 3, 4])
def test_overlap_fails_coherence(n):
    cs = overlap_contact(FiniteAlgebra(n))
    assert not check_axiom(cs, "C6").holds
    assert all(cs.ll_code(x, x) for x in range(cs.algebra.size))


def test_total_contact_is_coherent():
    assert check_axiom(total_contact(FiniteAlgebra(2)), "C6").holds


@pytest.mark.parametrize("cs", list(all_d_contacts(4)), ids=repr)
def test_d_contact_c5_fails_exactly_below_d(cs):
    d = cs.params["d"]
    has_proper_part = any(0 < x < d and x & d == x for x in range(cs.algebra.size))
    assert check_axiom(cs, "C5").holds == (not has_proper_part)


# -- facts -----------------------------------------------------------------------
@pytest.mark.parametrize("cs", list(all_bwcas()), ids=repr)
def test_facts_hold_on_every_bwca(cs):
    reports = verify_facts(cs)
    assert [r.name for r in reports] == ["BWCA", *FACT_TEXT]
    assert all(r.holds for r in reports)
    m = model_of(cs)
    assert all(not fact_failures(m, f) for f in FACT_TEXT)


def test_corrupted_relation_breaks_fact4():
    # overlap plus the single extra pair {a} C {b}: C3 fails, and with it fact 4
    over = {(x, y) for x in range(1, 8) for y in range(1, 8) if x & y}
    cs = full_contact(ABC, over | {(1, 2), (2, 1)})
    reports = {r.name: r for r in verify_facts(cs)}
    assert not reports["BWCA"].holds and reports["BWCA"].note == "C3 fails"
    f4 = reports["fact4"]
    # first failure in code order: {a} <= {a,c} << {a,c} but {a} touches {b} = -{a,c}
    a, ac = ABC.from_labels(["a"]), ABC.from_labels(["a", "c"])
    assert f4.witness == (a, ac, ac)
    m = model_of(cs)
    failures = fact_failures(m, "fact4")
    assert (from_code(a.code), from_code(ac.code), from_code(ac.code)) in failures
    b, bc = ABC.from_labels(["b"]), ABC.from_labels(["b", "c"])
    assert (from_code(b.code), from_code(bc.code), from_code(bc.code)) in failures
    assert not recheck(cs, f4)


@given(random_relations())
def test_fact_checker_matches_oracle(cs):
    m = model_of(cs)
    for f in FACT_TEXT:
        assert check_property(cs, f).holds == (not fact_failures(m, f))


# -- equivalence checks ---------------------------------------------------------------
@pytest.mark.parametrize("cs", list(all_bwcas()), ids=repr)
def test_c5_disc_ext_agree(cs):
    rep = check_equiv_c5_disc_ext(cs)
    want = axioms(model_of(cs))
    assert rep.holds and rep.details == {k: want[k] for k in ("C5", "DISC", "EXT")}


@pytest.mark.parametrize("cs", list(all_bwcas()), ids=repr)
def test_c6_agrees_with_ll_strictness(cs):
    rep = check_c6_equivalences(cs, product_form=False)
    assert rep.holds and set(rep.details) == {"C6", "ll_strict"}


def test_equivalence_checks_need_a_bwca():
    cs = full_contact(FiniteAlgebra(2), [(1, 2), (2, 1)])
    assert not is_bwca(cs)
    with pytest.raises(PreconditionError):
        check_equiv_c5_disc_ext(cs)
    with pytest.raises(PreconditionError):
        check_c6_equivalences(cs)


def test_product_form_needs_c4():
    cs = next(c for c in all_bwcas() if not is_bca(c))
    with pytest.raises(CapabilityError):
        check_c6_equivalences(cs, product_form=True)


def test_ll_product_strict_fails_at_trivial_regions():
    # x = 0, u = 1, y = v = 0 meets the premise in every BCA while x.y = u.v = 0
    for cs in all_bcas():
        top = cs.algebra.top_code
        assert not INSTANCES["ll_product_strict"](cs, 0, top, 0, 0)
        assert not check_property(cs, "ll_product_strict").holds


def test_guarded_product_form_tracks_c6_on_bcas():
    for cs in all_bcas():
        assert check_property(cs, "ll_product_strict_nonzero").holds == check_axiom(cs, "C6").holds


def _sum_prod_oracle(m):
    R = m.regions
    return all(
        m.ll(x & y, u & v)
        for x in R for u in R if m.ll(x, u)
        for y in R for v in R if m.ll(y, v)
    )


def test_ll_sum_prod_holds_on_bcas_and_matches_oracle():
    for cs in small_models():
        rep = check_ll_sum_prod(cs)
        assert rep.holds == _sum_prod_oracle(model_of(cs))
        if is_bca(cs):
            assert rep.holds
    assert any(not check_ll_sum_prod(cs).holds for cs in all_bwcas())


def test_path_graph_separates_gia_from_meet_form():
    cs = atom_graph_contact(ABC, [(0, 1), (1, 2)])
    m = model_of(cs)
    assert meet_form(m) and not gia(m)
    assert check_gia_meet_form(cs).holds
    rep = check_axiom(cs, "GIA")
    assert not rep.holds
    a, ab = ABC.from_labels(["a"]), ABC.from_labels(["a", "b"])
    x, ys = rep.witness
    # the oracle agrees that the reported family has no interpolant
    assert all(m.ll(from_code(x.code), from_code(y.code)) for y in ys)
    assert not any(
        m.ll(from_code(x.code), z) and all(m.ll(z, from_code(y.code)) for y in ys) for z in m.regions
    )
    # the minimal instance: x = {a}, Y = {{a,b}}
    assert not INSTANCES["GIA"](cs, a.code, 1 << ab.code)
