import pytest

from contactlab.errors import CapabilityError
from contactlab.reports import Status
from contactlab.search.expr import evaluate_at, parse_property
from contactlab.search.suite import GROUPS, OPEN_PROBLEMS, family_models, run_paper_suite, search_countermodel

# rows whose stated claim is refuted by a finite countermodel (see notes/decisions.md)
REFUTED = {"C6<->ll-product-strict (BCA)", "GIA<->meet-form", "d-contact unique G-point"}


@pytest.fixture(scope="module")
def suite():
    return {o.name: o for o in run_paper_suite()}


def test_suite_shape(suite):
    assert len(suite) == 30
    assert {f"fact{i}" for i in range(1, 7)} <= set(suite)
    assert all(o.models_checked > 0 for o in suite.values() if o.status is not Status.INCONCLUSIVE)


def test_every_row_except_the_refuted_claims_matches(suite):
    mismatched = {name for name, o in suite.items() if not o.matches_expectation}
    assert mismatched == REFUTED


def test_refuted_rows_carry_reproducible_countermodels(suite):
    for name in REFUTED:
        o = suite[name]
        assert o.status is Status.COUNTERMODEL and o.model is not None and o.witness is not None


def test_gia_countermodel_is_the_path_graph(suite):
    o = suite["GIA<->meet-form"]
    assert o.model.kind == "full" and o.model.algebra.n == 3
    w = dict(o.witness)
    assert w["GIA"] is False and w["meet_form"] is True
    x, ys = w["GIA_witness"]
    assert str(x) == "{a}" and {str(y) for y in ys} == {"{a,b}"}


def test_informational_variants_pass(suite):
    assert suite["C6<->ll-product-strict with x.y != 0 (BCA)"].status is Status.CONFIRMED
    assert suite["d-contact unique G-point (d = 1)"].status is Status.CONFIRMED


def test_expected_countermodels(suite):
    for name in ("ll-sum-prod without C4", "conjunctive product relation", "d-contact C5"):
        assert suite[name].status is Status.COUNTERMODEL and suite[name].matches_expectation
    assert suite["conjunctive product relation"].note == "C1 fails"


def test_open_problems_stay_inconclusive(suite):
    for name, _ in OPEN_PROBLEMS:
        assert suite[name].status is Status.INCONCLUSIVE


def test_group_filter():
    rows = run_paper_suite(["facts"])
    assert [o.name for o in rows] == [f"fact{i}" for i in range(1, 7)]
    with pytest.raises(ValueError):
        run_paper_suite(["nope"])
    assert "open" in GROUPS


def test_search_examples():
    ok = search_countermodel("C6 -> (x << y -> x < y | x = 0 | x = 1)")
    assert ok.status is Status.CONFIRMED and ok.models_checked == 11
    bad = search_countermodel("C5", "d_contact")
    assert bad.status is Status.COUNTERMODEL and bad.witness["axiom_witness"]
    prop = parse_property("x << y -> x = y")
    found = search_countermodel(prop, "bca", 2)
    assert found.status is Status.COUNTERMODEL
    assert not evaluate_at(prop, found.model, found.witness)


def test_family_bounds():
    assert len(list(family_models("bwca", 4))) == 3
    assert len(list(family_models("bca", 3))) == 7
    with pytest.raises(CapabilityError):
        list(family_models("bwca", 16))
    with pytest.raises(ValueError):
        family_models("groups")
