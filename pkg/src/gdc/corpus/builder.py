"""Generates ``arith.gd`` and ``ack.gd``.

The totality proofs are long but entirely regular, so they are assembled
here from a few proof combinators rather than written out by hand.  The
generated files are committed; ``python -m gdc.corpus.builder`` rewrites
them and the test suite checks that they are up to date.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from ..defenv import DefEnv, Definition, add_def, expand
from ..kernel import DefItem, ProofItem
from ..parser import parse_judgment, parse_term, print_item
from ..proof import Assume, Hyp, LemmaRef, ProofNode, UseDef, rule
from ..term import App, Case, Has, JudgKind, Succ, Template, Term, Var, ZERO, numeral

NAT, BOOL = JudgKind.NAT, JudgKind.BOOL
HERE = Path(__file__).parent

ARITH_DEFS = [
    ("one", (), "S(0)"),
    ("two", (), "S(S(0))"),
    ("P", ("a",), "case a of {0 => 0 | S(ap) => ap}"),
    ("plus", ("a", "b"), "case a of {0 => b | S(ap) => S(plus(ap, b))}"),
    ("times", ("a", "b"), "case a of {0 => 0 | S(ap) => plus(times(ap, b), b)}"),
    ("exp", ("a", "b"), "case b of {0 => 1 | S(bp) => times(a, exp(a, bp))}"),
    ("le", ("a", "b"), "case a of {0 => true | S(ap) => ap != b and le(ap, b)}"),
    ("lt", ("a", "b"), "le(a, b) and a != b"),
    ("ge", ("a", "b"), "not lt(a, b)"),
    ("gt", ("a", "b"), "not le(a, b)"),
]

ACK_DEFS = [
    ("A", ("x", "y"), "case x of {0 => S(y) | S(xp) => case y of {0 => A(xp, 1) | S(yp) => A(xp, A(x, yp))}}"),
]


def definitions(table) -> list[Definition]:
    return [Definition(name, params, parse_term(body, params)) for name, params, body in table]


def environment(defs: list[Definition]) -> DefEnv:
    env = DefEnv()
    for d in defs:
        env = add_def(env, d)
    return env


# ---------------------------------------------------------------------------
# proof combinators


def has(kind: JudgKind) -> Template:
    """The template ``z : kind``."""
    return Template("z", Has(Var("z"), kind))


def obj(nat_proof: ProofNode) -> ProofNode:
    return rule("natTE", nat_proof)


def refl(nat_proof: ProofNode) -> ProofNode:
    """``t = t : true`` from ``t : nat``."""
    return rule("eqR", obj(nat_proof))


def unfold(env: DefEnv, symbol: str, args: tuple[Term, ...], p: Template, inner: ProofNode) -> ProofNode:
    """``p[f(args)] : true`` from ``p[body of f at args] : true``."""
    return rule("defIE", UseDef(symbol), inner, p=p, args=args)


def case_zero(k: Case, p: Template, zero_nat: ProofNode, inner: ProofNode) -> ProofNode:
    """``p[k] : true`` from ``p[zero branch] : true``; ``zero_nat`` proves ``0 : nat``."""
    return rule("case0IE", refl(zero_nat), inner, case=k, p=p)


def case_succ(k: Case, p: Template, scrut_nat: ProofNode, inner: ProofNode) -> ProofNode:
    """Same for a scrutinee that is syntactically a successor."""
    return rule("caseSIE", refl(scrut_nat), inner, case=k, p=p)


def apply_forall(lemma: ProofNode, args: list[Term], arg_nats: list[ProofNode]) -> ProofNode:
    """Specialise ``forall x1:nat ... xn:nat. body`` to ``args``, giving ``body[args] : true``."""
    out = lemma
    for a, pn in zip(args, arg_nats):
        out = rule("forallE1", out, obj(pn), a=a)
        out = rule("impE", out, rule("judgTI", pn))
    return out


def forall_nat(var: str, body: ProofNode, tag: str = "") -> ProofNode:
    """``forall var. (var : nat) -> c : true`` from ``c : true`` under ``h<var> : var : nat``."""
    h0, h = f"h{var}0{tag}", f"h{var}{tag}"
    return rule(
        "forallI1",
        Assume((h0,), rule("impI", rule("natTI", Hyp(h0)), Assume((h,), body))),
        fresh=(var,),
    )


def induction(p: Template, x: str, base: ProofNode, step: ProofNode, target_nat: ProofNode,
              ih: str = "ih") -> ProofNode:
    """``p[target] : true``; ``step`` may use ``h<x> : x : nat`` and ``ih : p[x] : true``."""
    return rule("ind", base, Assume((f"h{x}", ih), step), target_nat, p=p, fresh=(x,))


def nat_hyp(var: str) -> ProofNode:
    """``var : nat`` from the hypothesis introduced by ``forall_nat``."""
    return rule("judgTE", Hyp(f"h{var}"))


def ind_hyp(var: str) -> ProofNode:
    """``var : nat`` as introduced by ``induction`` itself."""
    return Hyp(f"h{var}")


# ---------------------------------------------------------------------------
# totality of the arithmetic operations


def _case_of(env: DefEnv, symbol: str, args: tuple[Term, ...]) -> Case:
    body = expand(env, symbol, args)
    assert isinstance(body, Case), body
    return body


def binary_total(env: DefEnv, f: str, kind: JudgKind, on: int, base_goal, step_goal) -> ProofNode:
    """``forall a:nat. forall b:nat. f(a, b) : kind`` by induction on argument ``on``.

    ``base_goal(a, b)`` proves the zero branch at kind ``true``;
    ``step_goal(x, a, b)`` proves the successor branch with the predecessor
    instantiated to ``x``, under the induction hypothesis ``ih``.
    """
    a, b, x = Var("a"), Var("b"), Var("x")

    def at(n: Term) -> tuple[Term, Term]:
        return (n, b) if on == 0 else (a, n)

    p = Template("n", Has(App(f, at(Var("n"))), kind))
    zero = rule("zeroI")
    k0 = _case_of(env, f, at(ZERO))
    base = unfold(env, f, at(ZERO), has(kind), case_zero(k0, has(kind), zero, base_goal(a, b)))
    ks = _case_of(env, f, at(Succ(x)))
    sx = rule("succIE", ind_hyp("x"))
    step = unfold(env, f, at(Succ(x)), has(kind), case_succ(ks, has(kind), sx, step_goal(x, a, b)))
    target = nat_hyp("a" if on == 0 else "b")
    return forall_nat("a", forall_nat("b", induction(p, "x", base, step, target)))


def typed(proof: ProofNode) -> ProofNode:
    """``(t : k) : true`` from ``t : k``."""
    return rule("judgTI", proof)


def arith_proofs(env: DefEnv) -> list[ProofItem]:
    a_nat, b_nat = nat_hyp("a"), nat_hyp("b")
    ih = rule("judgTE", Hyp("ih"))
    items = []

    def add(name: str, goal: str, proof: ProofNode, variables=()):
        items.append(ProofItem(name, proof, (), frozenset(variables), parse_judgment(goal, variables)))

    # the small typing fact worked through by hand in the text
    zero = rule("zeroI")
    k = _case_of(env, "plus", (ZERO, ZERO))
    add(
        "plus_zero_nat",
        "plus(0, 0) : nat",
        rule("judgTE", unfold(env, "plus", (ZERO, ZERO), has(NAT), case_zero(k, has(NAT), zero, typed(zero)))),
    )

    add(
        "plus_total",
        "forall a:nat. forall b:nat. plus(a, b) : nat : true",
        binary_total(env, "plus", NAT, 0,
                     lambda a, b: typed(b_nat),
                     lambda x, a, b: typed(rule("succIE", ih))),
    )

    def via(lemma: str, args, nats):
        return apply_forall(LemmaRef(lemma), list(args), list(nats))

    add(
        "times_total",
        "forall a:nat. forall b:nat. times(a, b) : nat : true",
        binary_total(env, "times", NAT, 0,
                     lambda a, b: typed(zero),
                     lambda x, a, b: via("plus_total", [App("times", (x, b)), b], [ih, b_nat])),
    )
    add(
        "exp_total",
        "forall a:nat. forall b:nat. exp(a, b) : nat : true",
        binary_total(env, "exp", NAT, 1,
                     lambda a, b: typed(rule("succIE", zero)),
                     lambda x, a, b: via("times_total", [a, App("exp", (a, x))], [a_nat, ih])),
    )
    add(
        "le_bool",
        "forall a:nat. forall b:nat. le(a, b) : bool : true",
        binary_total(env, "le", BOOL, 0,
                     lambda a, b: typed(rule("boolI1", rule("trueAx"))),
                     lambda x, a, b: typed(rule("andTI", rule("neTI", obj(ind_hyp("x")), obj(b_nat)), ih))),
    )

    def wrapped(f: str, inner: ProofNode) -> ProofNode:
        a, b = Var("a"), Var("b")
        return forall_nat("a", forall_nat("b", unfold(env, f, (a, b), has(BOOL), typed(inner))))

    le_ab = rule("judgTE", via("le_bool", [Var("a"), Var("b")], [a_nat, b_nat]))
    add(
        "lt_bool",
        "forall a:nat. forall b:nat. lt(a, b) : bool : true",
        wrapped("lt", rule("andTI", le_ab, rule("neTI", obj(a_nat), obj(b_nat)))),
    )
    lt_ab = rule("judgTE", via("lt_bool", [Var("a"), Var("b")], [a_nat, b_nat]))
    add("ge_bool", "forall a:nat. forall b:nat. ge(a, b) : bool : true", wrapped("ge", rule("negTIE", lt_ab)))
    add("gt_bool", "forall a:nat. forall b:nat. gt(a, b) : bool : true", wrapped("gt", rule("negTIE", le_ab)))

    # closed computations, kept for differential testing against the evaluator
    one_nat = rule("succIE", zero)
    two_nat = rule("succIE", one_nat)
    two = numeral(2)
    add(
        "le_zero_two",
        "le(0, 2) : true",
        unfold(env, "le", (ZERO, two), Template("z", Var("z")),
               case_zero(_case_of(env, "le", (ZERO, two)), Template("z", Var("z")), zero, rule("trueAx"))),
    )
    eq_zero = Template("z", parse_term("z = 0", ("z",)))
    add(
        "pred_one",
        "P(1) = 0 : true",
        unfold(env, "P", (numeral(1),), eq_zero,
               case_succ(_case_of(env, "P", (numeral(1),)), eq_zero, one_nat, refl(zero))),
    )
    eq_two = Template("z", parse_term("z = 2", ("z",)))
    add(
        "plus_zero_two",
        "plus(0, 2) = 2 : true",
        unfold(env, "plus", (ZERO, two), eq_two,
               case_zero(_case_of(env, "plus", (ZERO, two)), eq_two, zero, refl(two_nat))),
    )
    # 1 + 1 = 2: unfold the outer addition, then the inner one under S(_)
    one = numeral(1)
    eq_s_two = Template("z", parse_term("S(z) = 2", ("z",)))
    inner = unfold(env, "plus", (ZERO, one), eq_s_two,
                   case_zero(_case_of(env, "plus", (ZERO, one)), eq_s_two, zero, refl(two_nat)))
    add(
        "one_plus_one",
        "plus(1, 1) = 2 : true",
        unfold(env, "plus", (one, one), eq_two,
               case_succ(_case_of(env, "plus", (one, one)), eq_two, one_nat, inner)),
    )
    eq_one = Template("z", parse_term("z = S(0)", ("z",)))
    add("one_def", "one = S(0) : true", unfold(env, "one", (), eq_one, refl(one_nat)))
    add("succ_zero_ne", "S(0) = 0 : false", rule("neIE", rule("succNeZeroI", zero), reverse=True))
    return items


# ---------------------------------------------------------------------------
# Ackermann's function


def ack_proofs(env: DefEnv) -> list[ProofItem]:
    """``forall x:nat. forall y:nat. A(x, y) : nat`` by an outer induction on x
    and an inner induction on y."""
    zero = rule("zeroI")
    one = numeral(1)
    x, y, w = Var("x"), Var("y"), Var("w")
    hx, hy, hw = ind_hyp("x"), nat_hyp("y"), ind_hyp("w")
    outer_ih = Hyp("ih")
    inner_ih = rule("judgTE", Hyp("jh"))
    p = Template("n", parse_term("forall y:nat. A(n, y) : nat", ("n",)))

    # x = 0: A(0, y) unfolds to S(y)
    k0 = _case_of(env, "A", (ZERO, y))
    base = forall_nat("y", unfold(env, "A", (ZERO, y), has(NAT),
                                  case_zero(k0, has(NAT), zero, typed(rule("succIE", hy)))))

    # x = S(x'): inner induction on y for A(S(x'), y)
    sx = Succ(x)
    sx_nat = rule("succIE", hx)
    q = Template("m", Has(App("A", (sx, Var("m"))), NAT))

    # y = 0: A(S(x'), 0) unfolds to A(x', 1), which is covered by the outer hypothesis
    ko = _case_of(env, "A", (sx, ZERO))
    ki = _inner_case(ko, x)
    inner_base = unfold(env, "A", (sx, ZERO), has(NAT), case_succ(
        ko, has(NAT), sx_nat, case_zero(ki, has(NAT), zero,
                                        apply_forall(outer_ih, [one], [rule("succIE", zero)]))))

    # y = S(w): A(S(x'), S(w)) unfolds to A(x', A(S(x'), w))
    sw = Succ(w)
    ko2 = _case_of(env, "A", (sx, sw))
    ki2 = _inner_case(ko2, x)
    inner_step = unfold(env, "A", (sx, sw), has(NAT), case_succ(
        ko2, has(NAT), sx_nat, case_succ(ki2, has(NAT), rule("succIE", hw),
                                         apply_forall(outer_ih, [App("A", (sx, w))], [inner_ih]))))
    step = forall_nat("y", induction(q, "w", inner_base, inner_step, hy, ih="jh"))

    goal = parse_judgment("forall x:nat. forall y:nat. A(x, y) : nat : true")
    total = rule("quantInd", base, Assume(("hx", "ih"), step), p=p, fresh=("x",))
    return [ProofItem("ack_total", total, (), frozenset(), goal)]


def _inner_case(outer: Case, pred: Term) -> Case:
    from ..term import subst

    inner = subst(outer.succ, outer.pred, pred)
    assert isinstance(inner, Case), inner
    return inner


# ---------------------------------------------------------------------------
# rendering


ARITH_HEADER = """\
-- Natural-number arithmetic: small numerals, predecessor, the primitive
-- recursive operations and orderings, their totality proofs, and a few
-- closed computations.  Generated by gdc.corpus.builder; do not edit.
"""

ACK_HEADER = """\
-- Ackermann's function and its totality by nested induction.
-- Generated by gdc.corpus.builder; do not edit.
"""


def render(header: str, defs: list[Definition], proofs: list[ProofItem]) -> str:
    parts = [header.rstrip("\n")]
    parts += [print_item(DefItem(d)) for d in defs]
    parts += [print_item(p) for p in proofs]
    return "\n\n".join(parts) + "\n"


def arith_text() -> str:
    defs = definitions(ARITH_DEFS)
    return render(ARITH_HEADER, defs, arith_proofs(environment(defs)))


def ack_text() -> str:
    defs = definitions(ACK_DEFS)
    return render(ACK_HEADER, defs, ack_proofs(environment(defs)))


GENERATED = {"arith.gd": arith_text, "ack.gd": ack_text}


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="Regenerate the generated corpus files.")
    ap.add_argument("--out", type=Path, default=HERE, help="output directory")
    ap.add_argument("--check", action="store_true", help="only report files that are out of date")
    args = ap.parse_args(argv)
    stale = 0
    for name, make in GENERATED.items():
        path = args.out / name
        text = make()
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"{name}: out of date")
                stale += 1
        else:
            path.write_text(text)
            print(f"wrote {path}")
    return 1 if stale else 0


if __name__ == "__main__":
    raise SystemExit(main())
