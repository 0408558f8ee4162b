from __future__ import annotations

import pytest
from hypothesis import given, settings

import oracles
from gen import closed_instances
from gdc.corpus import BUNDLED, check_path
from gdc.defenv import DefEnv, Definition, UnknownSymbol, add_def
from gdc.evaluator import (
    FALSE,
    TRUE,
    UNKNOWN,
    EvalConfig,
    GroundedFalse,
    GroundedTrue,
    GroundedValue,
    Nat,
    NotConstant,
    OpenTerm,
    Ungrounded,
    classify,
    evaluate,
    find_jets,
    has_kind,
    values_equal,
)
from gdc.kernel import Discipline
from gdc.parser import parse_term
from gdc.term import JudgKind, Var


def env_of(*defs: str) -> DefEnv:
    env = DefEnv()
    for text in defs:
        head, body = text.split(" := ")
        name, _, rest = head.partition("(")
        params = tuple(p.strip() for p in rest.rstrip(")").split(",") if p.strip())
        env = add_def(env, Definition(name, params, parse_term(body, params)))
    return env


PARADOX = env_of("L := not L", "C := C -> P", "S1 := true", "S2 := S1 or S2", "S3 := S2 and S3")


@pytest.fixture(scope="module")
def arith():
    return check_path(BUNDLED / "arith.gd").env


def ev(env, text, **kw):
    return evaluate(env, EvalConfig(**kw), parse_term(text))


@pytest.mark.parametrize(
    "text, want",
    [
        ("L", UNKNOWN),
        ("C", UNKNOWN),
        ("S2", TRUE),
        ("S3", UNKNOWN),
        ("L and false", FALSE),
        ("false and L", FALSE),
        ("L or true", TRUE),
        ("L -> true", TRUE),
        ("false -> L", TRUE),
        ("L <-> L", UNKNOWN),
        ("not S2", FALSE),
        ("P", UNKNOWN),
    ],
)
def test_paradox_environment(text, want):
    assert ev(PARADOX, text, fuel=10**4) is want


def test_arithmetic_examples(arith):
    assert ev(arith, "plus(2, 2)") == Nat(4)
    assert ev(arith, "times(3, 4)") == Nat(12)
    assert ev(arith, "exp(2, 10)") == Nat(1024)
    assert ev(arith, "P(0)") == Nat(0) and ev(arith, "P(5)") == Nat(4)
    assert ev(arith, "le(3, 3)") is TRUE and ev(arith, "lt(3, 3)") is FALSE


def test_ackermann_examples():
    env = check_path(BUNDLED / "ack.gd").env
    assert ev(env, "A(2, 3)") == Nat(oracles.ackermann(2, 3)) == Nat(9)
    assert ev(env, "A(3, 3)") == Nat(61)


def test_values_print_plainly():
    assert (str(TRUE), str(FALSE), str(UNKNOWN), str(Nat(4))) == ("true", "false", "unknown", "nat 4")


def test_control_flow():
    env = DefEnv()
    assert ev(env, "if true then 1 else 2") == Nat(1)
    assert ev(env, "if false then 1 else 2") == Nat(2)
    assert ev(PARADOX, "if L then 1 else 2") is UNKNOWN
    assert ev(env, "case 3 of {0 => 0 | S(p) => p}") == Nat(2)
    assert ev(env, "case true of {0 => 0 | S(p) => p}") is UNKNOWN
    assert ev(env, "S(true)") is UNKNOWN


def test_bounded_quantifiers():
    env = DefEnv()
    assert ev(env, "forall x. x = 0") is FALSE
    assert ev(env, "exists x. x = 7") is TRUE
    assert ev(env, "exists x. x = 7", quant_bound=3) is UNKNOWN
    # no counterexample is not a proof
    assert ev(env, "forall x:nat. x = x") is UNKNOWN
    assert ev(env, "forall x. true") is TRUE


def test_fuel_exhaustion_and_memo(arith):
    assert ev(arith, "plus(40, 40)", fuel=5, jets=False) is UNKNOWN
    assert ev(arith, "plus(40, 40)", fuel=41, jets=False) == Nat(80)
    # repeated identical calls are served from the memo table: 21 + 0 + 41 unfoldings, not 21 + 21 + 41
    assert ev(arith, "plus(plus(20, 20), plus(20, 20))", fuel=62, jets=False) == Nat(80)
    assert ev(arith, "plus(plus(20, 20), plus(20, 20))", fuel=61, jets=False) is UNKNOWN


def test_jets_are_recognised_and_agree(arith):
    jets = find_jets(arith)
    assert jets == {"plus": "plus", "times": "times", "exp": "exp"}
    for a in range(6):
        for b in range(6):
            for f in ("plus", "times", "exp"):
                on = ev(arith, f"{f}({a}, {b})")
                off = ev(arith, f"{f}({a}, {b})", jets=False)
                assert on == off
    assert ev(arith, "exp(8, 8)") == Nat(8**8)


def test_jets_ignore_look_alikes():
    env = env_of("plus(a, b) := case a of { 0 => S(b) | S(ap) => S(plus(ap, b)) }")
    assert find_jets(env) == {}
    assert ev(env, "plus(2, 2)") == Nat(5)


@pytest.mark.parametrize(
    "discipline, nat_bool, one_true, zero_false",
    [
        (Discipline.AT, UNKNOWN, UNKNOWN, UNKNOWN),
        (Discipline.CT, TRUE, TRUE, TRUE),
        (Discipline.DT, FALSE, FALSE, FALSE),
    ],
)
def test_disciplines_on_mixed_values(discipline, nat_bool, one_true, zero_false):
    assert has_kind(Nat(0), JudgKind.BOOL, discipline) is nat_bool
    assert values_equal(Nat(1), TRUE, discipline) is one_true
    assert values_equal(Nat(0), FALSE, discipline) is zero_false
    assert has_kind(TRUE, JudgKind.OBJ, discipline) is TRUE
    assert has_kind(Nat(3), JudgKind.NAT, discipline) is TRUE


@settings(max_examples=150, deadline=None)
@given(closed_instances())
def test_disciplines_agree_whenever_all_three_are_determinate(inst):
    env, t = inst
    vals = {d: evaluate(env, EvalConfig(fuel=64, quant_bound=8, discipline=d), t) for d in Discipline}
    at = vals[Discipline.AT]
    # AT is the most cautious: anything it decides, the others decide the same way
    if at is not UNKNOWN:
        assert vals[Discipline.CT] == at and vals[Discipline.DT] == at


@settings(max_examples=150, deadline=None)
@given(closed_instances())
def test_more_fuel_never_changes_a_determinate_value(inst):
    env, t = inst
    low = evaluate(env, EvalConfig(fuel=8, quant_bound=8), t)
    high = evaluate(env, EvalConfig(fuel=64, quant_bound=8), t)
    if low is not UNKNOWN:
        assert high == low


def test_classify():
    env = env_of("L := not L", "S1 := true", "F := not S1", "N := S(S(0))", "f(x) := x")
    assert classify(env, EvalConfig(fuel=100), "S1") == GroundedTrue()
    assert classify(env, EvalConfig(fuel=100), "F") == GroundedFalse()
    assert classify(env, EvalConfig(fuel=100), "N") == GroundedValue(Nat(2))
    assert classify(env, EvalConfig(fuel=100), "L") == Ungrounded(100)
    assert str(classify(env, EvalConfig(fuel=10_000), "L")) == "ungrounded (fuel=10000)"
    with pytest.raises(NotConstant):
        classify(env, None, "f")
    with pytest.raises(UnknownSymbol):
        classify(env, None, "nope")


def test_open_terms_are_refused_unless_bound():
    with pytest.raises(OpenTerm):
        evaluate(DefEnv(), None, parse_term("?x = 0"))
    assert evaluate(DefEnv(), None, parse_term("?x = 0"), {"x": Nat(0)}) is TRUE
    assert evaluate(DefEnv(), None, Var("b"), {"b": FALSE}) is FALSE


def test_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(fuel=0)
    with pytest.raises(ValueError):
        EvalConfig(quant_bound=-1)


def test_deep_recursion_does_not_overflow_the_stack():
    env = env_of("down(n) := case n of { 0 => true | S(p) => down(p) }")
    assert ev(env, "down(4000)", fuel=10**5) is TRUE
