from __future__ import annotations

from hypothesis import given, settings

from gen import terms
from gdc.parser import parse_term, print_term
from gdc.term import (
    App,
    Case,
    Forall,
    Not,
    Succ,
    Var,
    ZERO,
    alpha_eq,
    as_numeral,
    free_vars,
    fresh_name,
    numeral,
    subst,
    subst_many,
)


def test_fresh_name_skips_taken_names():
    assert fresh_name("x", set()) == "x1"
    assert fresh_name("x", {"x1", "x2"}) == "x3"
    assert fresh_name("x7", {"x1"}) == "x2"


def test_fresh_name_keeps_all_digit_base():
    assert fresh_name("12", set()) == "121"


def test_free_vars_respects_binders():
    t = parse_term("forall x. ?x = ?y and case ?z of {0 => true | S(p) => p = ?w}")
    assert free_vars(t) == {"y", "z", "w"}


def test_subst_replaces_free_occurrences_only():
    t = parse_term("?x = 0 and forall x. ?x = 0")
    got = subst(t, "x", ZERO)
    assert alpha_eq(got, parse_term("0 = 0 and forall x. ?x = 0"))


def test_subst_avoids_capture():
    t = Forall("y", App("f", (Var("x"), Var("y"))))
    got = subst(t, "x", Var("y"))
    assert isinstance(got, Forall) and got.x != "y"
    assert free_vars(got) == {"y"}
    assert alpha_eq(got, Forall("z", App("f", (Var("y"), Var("z")))))


def test_subst_avoids_capture_in_case_branch():
    t = Case(Var("n"), ZERO, "p", App("f", (Var("p"), Var("m"))))
    got = subst(t, "m", Succ(Var("p")))
    assert got.pred != "p"
    assert free_vars(got) == {"n", "p"}


def test_subst_many_is_simultaneous():
    t = App("f", (Var("x"), Var("y")))
    got = subst_many(t, {"x": Var("y"), "y": Var("x")})
    assert got == App("f", (Var("y"), Var("x")))


def test_alpha_eq_ignores_bound_names():
    assert alpha_eq(parse_term("forall x. ?x = 0"), parse_term("forall y. ?y = 0"))
    assert not alpha_eq(parse_term("forall x. ?x = ?y"), parse_term("forall y. ?y = ?y"))
    assert not alpha_eq(Not(Var("a")), Not(Var("b")))


def test_numerals():
    assert numeral(0) == ZERO
    assert as_numeral(numeral(5)) == 5
    assert as_numeral(Succ(Var("n"))) is None


@settings(max_examples=200, deadline=None)
@given(terms())
def test_alpha_eq_reflexive_and_stable_under_trivial_subst(t):
    assert alpha_eq(t, t)
    assert alpha_eq(subst(t, "unused_name", ZERO), t)


@settings(max_examples=200, deadline=None)
@given(terms())
def test_subst_removes_the_variable(t):
    got = subst(t, "x", ZERO)
    assert "x" not in free_vars(got)
    assert free_vars(got) == free_vars(t) - {"x"}


@settings(max_examples=200, deadline=None)
@given(terms(), terms(max_depth=2))
def test_subst_commutes_with_printing(t, s):
    got = subst(t, "x", s)
    assert alpha_eq(parse_term(print_term(got)), got)


def test_deep_numerals_do_not_exhaust_the_stack():
    big = Succ(numeral(4999))
    assert free_vars(big) == frozenset()
    assert alpha_eq(big, numeral(5000))
    assert as_numeral(subst(big, "x", ZERO)) == 5000
    assert print_term(big) == "5000"
    wrapped = subst(App("f", (Succ(Succ(Var("x"))),)), "x", numeral(4000))
    assert as_numeral(wrapped.args[0]) == 4002
