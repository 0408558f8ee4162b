from __future__ import annotations

import pytest

from gdc.defenv import DefEnv
from gdc.derived import (
    EXPANDERS,
    DerivationBroken,
    UnknownDerivedRule,
    _schemas,
    expand_derived,
    verify_all_derivations,
)
from gdc.kernel import PRIMITIVES, CheckConfig, Checker, Context, MissingTypingPremise, check
from gdc.parser import parse_judgment, parse_term
from gdc.proof import Assume, Hole, Hyp, Inst, Placeholder, Rule, rule
from gdc.term import Template


def test_every_derived_rule_verifies():
    results = verify_all_derivations(strict=True)
    assert {r.name for r in results} == set(EXPANDERS)
    assert all(r.ok and r.conclusion.alpha_eq(r.expected) for r in results)


def test_derived_names_do_not_shadow_primitives():
    assert not set(EXPANDERS) & set(PRIMITIVES)


def test_every_derived_rule_has_a_schema():
    assert set(_schemas()) == set(EXPANDERS)


def test_broken_expander_is_reported(monkeypatch):
    monkeypatch.setitem(EXPANDERS, "impE", lambda ck, ctx, node: rule("trueAx"))
    results = verify_all_derivations()
    bad = [r for r in results if not r.ok]
    assert [r.name for r in bad] == ["impE"]
    with pytest.raises(DerivationBroken) as e:
        verify_all_derivations(strict=True)
    assert e.value.name == "impE"


def test_expander_raising_a_check_error_is_reported(monkeypatch):
    monkeypatch.setitem(EXPANDERS, "orTI", lambda ck, ctx, node: rule("frobnicate"))
    with pytest.raises(DerivationBroken) as e:
        verify_all_derivations(strict=True)
    assert e.value.cause.code == "UnknownRule"


def test_unknown_derived_rule():
    with pytest.raises(UnknownDerivedRule):
        expand_derived("noSuchRule", Rule("noSuchRule"))


def test_expand_quant_ind_produces_checkable_primitives():
    p = Template("x", parse_term("?x = ?x", ("x",)))
    base = Placeholder(parse_judgment("0 = 0 : true"))
    step = Assume(("hn", "ih"), Placeholder(parse_judgment("S(?n) = S(?n) : true")))
    node = Rule("quantInd", Inst(templates={"p": p}, fresh=("n",)), (base, step))
    out = expand_derived("quantInd", node)
    assert isinstance(out, Rule) and out.name in PRIMITIVES
    ck = Checker(DefEnv(), CheckConfig(), derived=EXPANDERS, allow_placeholders=True)
    got = ck.check(Context(), out)
    assert got.alpha_eq(parse_judgment("forall x:nat. x = x : true"))


def test_concrete_modus_ponens():
    ctx = [("hi", parse_judgment("?a -> ?b : true")), ("ha", parse_judgment("?a : true"))]
    got = check(DefEnv(), None, ctx, rule("impE", Hyp("hi"), Hyp("ha")))
    assert got == parse_judgment("?b : true")


def test_missing_typing_premise_is_attributed_to_the_derived_rule():
    ctx = [("h", parse_judgment("?b : true"))]
    node = rule("impI", Hole(), Assume(("k",), Hyp("h")), a=parse_term("?a"))
    with pytest.raises(MissingTypingPremise) as e:
        check(DefEnv(), None, ctx, node)
    assert (e.value.rule, e.value.index) == ("impI", 0)
    assert e.value.expected == parse_judgment("?a : bool")
