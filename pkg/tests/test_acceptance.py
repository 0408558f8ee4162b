"""The ten acceptance criteria, each with its time limit.

A pass/fail line per criterion is printed in the session summary.
"""

from __future__ import annotations

import itertools
import random

import oracles
from conftest import criterion
from gen import random_env, random_term

from gdc.corpus import BUNDLED, check_path, load, read_manifest
from gdc.defenv import DefEnv, Definition, add_def
from gdc.derived import verify_all_derivations
from gdc.evaluator import FALSE as FALSE_V, TRUE as TRUE_V, UNKNOWN, EvalConfig, Nat, evaluate
from gdc.judgment import Judgment
from gdc.kernel import DefItem, Discipline, Pragma, ProofItem, check
from gdc.parser import parse_file, parse_judgment, parse_term, print_file, print_term
from gdc.proof import Hyp, rule
from gdc.term import (
    And,
    App,
    FALSE,
    Forall,
    Exists,
    Iff,
    Imp,
    JudgKind,
    Not,
    Or,
    TRUE,
    Var,
    alpha_eq,
    children,
    free_vars,
    numeral,
)


def _paradox_env() -> DefEnv:
    env = DefEnv()
    for text in ("L := not L", "C := C -> P", "S1 := true", "S2 := S1 or S2", "S3 := S2 and S3"):
        name, body = text.split(" := ")
        env = add_def(env, Definition(name, (), parse_term(body)))
    return env


def test_1_paradox_resistance():
    with criterion(1, "Liar and Curry rejected with MissingTypingPremise on a bool judgment", 1.0):
        report = check_path(BUNDLED / "paradox.gd")
        pinned = {e.fields["item"]: e for e in read_manifest(BUNDLED / "manifest.txt") if e.expect == "rejects"}
        for item in ("liar", "curry", "liar_bool", "curry_bool"):
            r = report[item]
            assert not r.ok, item
            assert r.error_code == "MissingTypingPremise", (item, r.error)
            assert r.error.expected is not None and r.error.expected.kind is JudgKind.BOOL
            assert r.error.rule == pinned[item].fields["rule"]
            assert r.error.index == int(pinned[item].fields["premise"])
        assert str(report["liar"].error.expected) == "L : bool"
        assert str(report["curry"].error.expected) == "C : bool"


def test_2_groundedness_oracle():
    with criterion(2, "L and C ungrounded at every fuel; S2 true; S3 unknown", 1.0):
        env = _paradox_env()
        for fuel in (1, 10, 10**2, 10**3, 10**4):
            cfg = EvalConfig(fuel=fuel)
            assert evaluate(env, cfg, App("L")) is UNKNOWN
            assert evaluate(env, cfg, App("C")) is UNKNOWN
        assert evaluate(env, EvalConfig(fuel=10**4), App("S2")) is TRUE_V
        assert evaluate(env, EvalConfig(fuel=10**4), App("S3")) is UNKNOWN


def _literal(v: str):
    return {oracles.T: TRUE, oracles.F: FALSE, oracles.U: App("L")}[v]


def test_3_kleene_tables():
    with criterion(3, "exhaustive strong Kleene tables for not/and/or/->/<->", 1.0):
        env = _paradox_env()
        cfg = EvalConfig(fuel=100)
        assert oracles.AND_TABLE == oracles.AND_LITERAL
        assert oracles.OR_TABLE == oracles.OR_LITERAL
        cases = 0
        for (a,), want in oracles.NOT_TABLE.items():
            assert str(evaluate(env, cfg, Not(_literal(a)))) == want
            cases += 1
        for cls, table in ((And, oracles.AND_TABLE), (Or, oracles.OR_TABLE),
                           (Imp, oracles.IMP_TABLE), (Iff, oracles.IFF_TABLE)):
            for (a, b), want in table.items():
                got = evaluate(env, cfg, cls(_literal(a), _literal(b)))
                assert str(got) == want, (cls.__name__, a, b, got)
                cases += 1
        assert cases == 3 + 4 * 9


def test_4_de_morgan():
    with criterion(4, "De Morgan on all 9 pairs; andIE/orIE round-trip in the kernel", 1.0):
        env = _paradox_env()
        cfg = EvalConfig(fuel=100)
        for a, b in itertools.product(oracles.VALUES, repeat=2):
            x, y = _literal(a), _literal(b)
            assert evaluate(env, cfg, Not(And(Not(x), Not(y)))) == evaluate(env, cfg, Or(x, y))
            assert evaluate(env, cfg, Not(Or(Not(x), Not(y)))) == evaluate(env, cfg, And(x, y))
        a, b = Var("a"), Var("b")
        for cls, name in ((And, "andIE"), (Or, "orIE")):
            for kind in (JudgKind.TRUE, JudgKind.FALSE, JudgKind.BOOL):
                start = Judgment(cls(a, b), kind)
                ctx = [("h", start)]
                there = check(DefEnv(), None, ctx, rule(name, Hyp("h"), reverse=True))
                back = check(DefEnv(), None, ctx, rule(name, rule(name, Hyp("h"), reverse=True)))
                dual = Or if cls is And else And
                assert there.alpha_eq(Judgment(Not(dual(Not(a), Not(b))), kind))
                assert back.alpha_eq(start)


def test_5_derived_rules():
    with criterion(5, "verify_all_derivations passes for at least 20 derived rules", 5.0):
        results = verify_all_derivations()
        assert all(r.ok for r in results), [(r.name, str(r.error)) for r in results if not r.ok]
        assert len({r.name for r in results}) >= 20


def _arith_env():
    report = check_path(BUNDLED / "arith.gd")
    return report, report.env


def test_6_arithmetic():
    with criterion(6, "plus totality checks; +, *, exp and orderings match a big-int oracle", 30.0):
        report, env = _arith_env()
        assert report["plus_total"].ok
        assert report["plus_total"].judgment.alpha_eq(
            parse_judgment("forall a:nat. forall b:nat. plus(a, b) : nat : true"))
        rng = random.Random(6)
        pairs = [(rng.randint(0, 50), rng.randint(0, 50)) for _ in range(200)]
        small = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(200)]
        order = [(rng.randint(0, 50), rng.randint(0, 50)) for _ in range(200)]

        def value(text, **kw):
            return evaluate(env, EvalConfig(fuel=10**6, **kw), parse_term(text))

        for jets in (True, False):
            for a, b in pairs:
                assert value(f"plus({a}, {b})", jets=jets) == Nat(oracles.plus(a, b))
                assert value(f"times({a}, {b})", jets=jets) == Nat(oracles.times(a, b))
            for a, b in order:
                for f in ("le", "lt", "ge", "gt"):
                    want = TRUE_V if getattr(oracles, f)(a, b) else FALSE_V
                    assert value(f"{f}({a}, {b})", jets=jets) is want, (f, a, b)
        for a, b in small:
            assert value(f"exp({a}, {b})") == Nat(oracles.power(a, b))
            # pure unfolding as well, wherever the unary computation stays small
            if oracles.power(a, b) <= 2000:
                assert value(f"exp({a}, {b})", jets=False) == Nat(oracles.power(a, b))


def test_7_ackermann():
    with criterion(7, "Ackermann totality checks; eval matches the memoised recurrence", 60.0):
        report = check_path(BUNDLED / "ack.gd")
        assert report["ack_total"].ok
        assert report["ack_total"].judgment.alpha_eq(
            parse_judgment("forall x:nat. forall y:nat. A(x, y) : nat : true"))
        env = report.env
        for x in range(4):
            for y in range(11):
                got = evaluate(env, EvalConfig(fuel=10**6), App("A", (numeral(x), numeral(y))))
                assert got == Nat(oracles.ackermann(x, y)), (x, y, got)
        assert oracles.ackermann(2, 3) == 9 and oracles.ackermann(3, 3) == 61


def test_8_fuel_monotonicity():
    with criterion(8, "1000 random instances, fuel 1..64, no bad transitions", 30.0):
        rng = random.Random(8)
        determinate = 0
        for _ in range(1000):
            env, arities = random_env(rng)
            t = random_term(rng, rng.randint(0, 3), (), arities)
            first = None
            for fuel in range(1, 65):
                v = evaluate(env, EvalConfig(fuel=fuel), t)
                if first is None:
                    if v is not UNKNOWN:
                        first = v
                else:
                    assert v == first, (print_term(t), fuel, first, v)
            determinate += first is not None
        # the property is only meaningful if many instances become determinate
        assert determinate >= 300


def _quantifier_free(t) -> bool:
    if isinstance(t, (Forall, Exists)):
        return False
    return all(_quantifier_free(c) for c in children(t))


def test_9_differential_soundness():
    with criterion(9, "corpus-proven closed quantifier-free facts evaluate to their proven value", 10.0):
        checked = 0
        for path in sorted(BUNDLED.glob("*.gd")):
            items = load(path).items
            report = check_path(path)
            discipline = Discipline.AT
            for item in items:
                if isinstance(item, Pragma) and item.key == "discipline":
                    discipline = Discipline(item.value)
                if not isinstance(item, ProofItem) or item.hyps or item.variables:
                    continue
                r = report[item.name]
                if not r.ok or r.judgment.kind not in (JudgKind.TRUE, JudgKind.FALSE):
                    continue
                t = r.judgment.subject
                if free_vars(t) or not _quantifier_free(t):
                    continue
                want = TRUE_V if r.judgment.kind is JudgKind.TRUE else FALSE_V
                got = evaluate(report.env, EvalConfig(fuel=10**5, discipline=discipline), t)
                assert got is want, (path.name, item.name, got)
                checked += 1
        assert checked >= 20


def test_10_round_trip():
    with criterion(10, "parse after print is alpha-equal on the corpus and 1000 fuzzed terms", 10.0):
        for path in sorted(BUNDLED.glob("*.gd")):
            first = parse_file(path.read_text())
            again = parse_file(print_file(first))
            assert len(first.items) == len(again.items)
            for a, b in zip(first.items, again.items):
                assert _items_alpha_eq(a, b), (path.name, a)
        rng = random.Random(10)
        for _ in range(1000):
            t = random_term(rng, rng.randint(0, 5), allow_free=True)
            text = print_term(t)
            assert alpha_eq(parse_term(text), t), text


def _items_alpha_eq(a, b) -> bool:
    match a, b:
        case DefItem(d1), DefItem(d2):
            return d1.symbol == d2.symbol and d1.params == d2.params and alpha_eq(d1.body, d2.body)
        case ProofItem(), ProofItem():
            return (a.name == b.name and a.proof == b.proof and a.hyps == b.hyps
                    and a.variables == b.variables and a.goal == b.goal)
        case Pragma(), Pragma():
            return (a.key, a.value) == (b.key, b.value)
    return False
