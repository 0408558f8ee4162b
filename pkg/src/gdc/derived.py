"""Derived rules, each expanded into primitive rule applications.

An expander receives the rule application and returns a proof tree that
the kernel then checks like any other.  Non-hypothetical premises are
checked once up front (to learn the terms the expansion needs) and
re-enter the expansion as ``Checked`` leaves.  Hypothetical premises are
either passed through to a primitive rule introducing the same
hypotheses, or have their hypotheses cut by proofs from the surrounding
branch.

``verify_all_derivations`` instantiates every rule with schematic
premises and confirms that the expansion proves the declared conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .defenv import DefEnv
from .judgment import Context, Judgment
from .kernel import (
    CheckConfig,
    CheckError,
    Checker,
    PremiseShapeMismatch,
    VariableEscape,
    _Step,
    _subject,
)
from .proof import Assume, Checked, Hole, Hyp, Inst, Placeholder, ProofNode, Rule, UseDef, proof_names, replace_hyp, rule, subst_proof
from .term import (
    And,
    Forall,
    Has,
    If,
    Iff,
    Imp,
    JudgKind,
    Not,
    Or,
    TRUE,
    Template,
    Term,
    Var,
    free_vars,
    fresh_name,
)

T, F, BOOL, NAT = JudgKind.TRUE, JudgKind.FALSE, JudgKind.BOOL, JudgKind.NAT


def J(t: Term, k: JudgKind) -> Judgment:
    return Judgment(t, k)


class UnknownDerivedRule(Exception):
    code = "UnknownDerivedRule"


class DerivationBroken(Exception):
    code = "DerivationBroken"

    def __init__(self, name: str, cause: Exception):
        super().__init__(f"derived rule {name} no longer checks: {cause}")
        self.name = name
        self.cause = cause


Expander = Callable[[Checker, Context, Rule], ProofNode]
EXPANDERS: dict[str, Expander] = {}


def derived(name: str):
    def register(fn: Expander) -> Expander:
        EXPANDERS[name] = fn
        return fn

    return register


# ---------------------------------------------------------------------------
# building blocks


def _branch(ck: Checker, build: Callable[[Hyp], ProofNode]) -> Assume:
    label = ck.fresh_label()
    return Assume((label,), build(Hyp(label)))


def _cases(ck: Checker, major: ProofNode, on_true, on_false) -> Rule:
    """boolE with both hypothetical premises built from fresh labels."""
    return rule("boolE", major, _branch(ck, on_true), _branch(ck, on_false))


def _cut(s: _Step, i: int, hyps: Sequence[Judgment], proofs: Sequence[ProofNode]) -> ProofNode:
    """Premise ``i`` with its hypotheses replaced by ``proofs``."""
    sub = s._sub(i)
    if not isinstance(sub, Assume):
        return sub
    if sub.labels and len(sub.labels) != len(hyps):
        raise PremiseShapeMismatch(
            f"hypothetical premise introduces {len(hyps)} hypothesis(es), {len(sub.labels)} label(s) given",
            rule=s.name,
            index=i,
        )
    for stated, actual in zip(sub.stated, hyps):
        if stated is not None and not stated.alpha_eq(actual):
            raise PremiseShapeMismatch(
                f"hypothetical premise {i} states a different hypothesis",
                rule=s.name, index=i, expected=actual, found=stated,
            )
    body = sub.body
    for label, proof in reversed(list(zip(sub.labels, proofs))):
        body = replace_hyp(body, label, proof)
    return body


def _explode(neg: ProofNode, pos: ProofNode, a: Term, b: Term) -> Rule:
    """From ``not a : true`` and ``a : true`` conclude ``b : true`` via a conditional."""
    ite = If(a, TRUE, b)
    through = rule("iftrueIE", pos, rule("trueAx"), ite=ite)
    return rule("iffalseIE", rule("negIE2", neg, reverse=True), through, ite=ite, reverse=True)


def _wrap_bool(node: ProofNode) -> Rule:
    return rule("judgTI", node)


# ---------------------------------------------------------------------------
# negation


@derived("negTIE")
def _neg_tie(ck, ctx, node):
    """a : bool  <=>  not a : bool"""
    s = _Step(ck, ctx, node)
    s.arity(1)
    if not s.reverse:
        a = _subject(s, "a", 0, BOOL)
        major = Checked(J(a, BOOL))
        on_t = lambda h: _wrap_bool(rule("boolI2", rule("negIE1", h)))
        on_f = lambda h: _wrap_bool(rule("boolI1", rule("negIE2", h)))
    else:
        j = s.get(0, BOOL)
        s.shape(0, j, Not, "a negation")
        major = Checked(j)
        on_t = lambda h: _wrap_bool(rule("boolI2", rule("negIE2", h, reverse=True)))
        on_f = lambda h: _wrap_bool(rule("boolI1", rule("negIE1", h, reverse=True)))
    return rule("judgTE", _cases(ck, major, on_t, on_f))


@derived("boolContra")
def _bool_contra(ck, ctx, node):
    """a : bool, [a : false |- a : true]  ==>  a : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    return rule("boolE", Checked(J(a, BOOL)), _branch(ck, lambda h: h), s.subs[1])


@derived("contraNeg1")
def _contra_neg1(ck, ctx, node):
    """a : bool, [not a : true |- a : true]  ==>  a : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    return _cases(
        ck,
        Checked(J(a, BOOL)),
        lambda h: h,
        lambda h: _cut(s, 1, [J(Not(a), T)], [rule("negIE2", h)]),
    )


@derived("contraNeg2")
def _contra_neg2(ck, ctx, node):
    """a : bool, [a : true |- not a : true]  ==>  not a : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    return rule("boolE", Checked(J(a, BOOL)), s.subs[1], _branch(ck, lambda h: rule("negIE2", h)))


@derived("negI")
def _neg_i(ck, ctx, node):
    """a : bool, [a : true |- b : true] with b fresh  ==>  not a : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    (b,) = s.fresh(1)
    s.hypo(1, [J(a, T)], [b], want=J(Var(b), T))
    p1 = subst_proof(s.subs[1], {b: Not(a)})
    return rule("boolE", Checked(J(a, BOOL)), p1, _branch(ck, lambda h: rule("negIE2", h)))


@derived("negE")
def _neg_e(ck, ctx, node):
    """not a : true, a : true  ==>  b : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    neg = s.shape(0, s.get(0, T), Not, "a negation")
    s.expect(1, J(neg.t, T))
    b = s.need("b")
    return _explode(Checked(J(neg, T)), Checked(J(neg.t, T)), neg.t, b)


@derived("dblNegIE")
def _dbl_neg_ie(ck, ctx, node):
    """a : true  <=>  not not a : true"""
    s = _Step(ck, ctx, node)
    s.arity(1)
    j = s.get(0, T)
    if not s.reverse:
        return rule("negIE2", rule("negIE1", Checked(j)))
    inner = s.shape(0, j, Not, "a double negation")
    if not isinstance(inner.t, Not):
        s._fail(0, "premise must be a double negation", found=j)
    return rule("negIE1", rule("negIE2", Checked(j), reverse=True), reverse=True)


# ---------------------------------------------------------------------------
# conjunction and disjunction typing


@derived("andTI")
def _and_ti(ck, ctx, node):
    """a : bool, b : bool  ==>  a and b : bool"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    b = _subject(s, "b", 1, BOOL)
    on_a_true = lambda ha: _cases(
        ck,
        Checked(J(b, BOOL)),
        lambda hb: _wrap_bool(rule("boolI1", rule("andI1", ha, hb))),
        lambda hb: _wrap_bool(rule("boolI2", rule("andI3", hb, a=a))),
    )
    on_a_false = lambda ha: _wrap_bool(rule("boolI2", rule("andI2", ha, b=b)))
    return rule("judgTE", _cases(ck, Checked(J(a, BOOL)), on_a_true, on_a_false))


@derived("orTI")
def _or_ti(ck, ctx, node):
    """a : bool, b : bool  ==>  a or b : bool"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    b = _subject(s, "b", 1, BOOL)
    on_a_true = lambda ha: _wrap_bool(rule("boolI1", rule("orI1", ha, b=b)))
    on_a_false = lambda ha: _cases(
        ck,
        Checked(J(b, BOOL)),
        lambda hb: _wrap_bool(rule("boolI1", rule("orI2", hb, a=a))),
        lambda hb: _wrap_bool(rule("boolI2", rule("orI3", ha, hb))),
    )
    return rule("judgTE", _cases(ck, Checked(J(a, BOOL)), on_a_true, on_a_false))


@derived("andTE")
def _and_te(ck, ctx, node):
    """a and b : bool, [a : bool |- c : true], [b : bool |- c : true]  ==>  c : true"""
    s = _Step(ck, ctx, node)
    s.arity(3)
    j = s.get(0, BOOL)
    conj = s.shape(0, j, And, "a conjunction")
    ha_, hb_ = [J(conj.l, BOOL)], [J(conj.r, BOOL)]
    on_true = lambda h: _cut(s, 1, ha_, [rule("boolI1", rule("andE1", h))])
    on_false = lambda h: rule(
        "andE3",
        h,
        _branch(ck, lambda k: _cut(s, 1, ha_, [rule("boolI2", k)])),
        _branch(ck, lambda k: _cut(s, 2, hb_, [rule("boolI2", k)])),
    )
    return _cases(ck, Checked(j), on_true, on_false)


@derived("orTE")
def _or_te(ck, ctx, node):
    """a or b : bool, [a : bool |- c : true], [b : bool |- c : true]  ==>  c : true"""
    s = _Step(ck, ctx, node)
    s.arity(3)
    j = s.get(0, BOOL)
    disj = s.shape(0, j, Or, "a disjunction")
    ha_, hb_ = [J(disj.l, BOOL)], [J(disj.r, BOOL)]
    on_true = lambda h: rule(
        "orE1",
        h,
        _branch(ck, lambda k: _cut(s, 1, ha_, [rule("boolI1", k)])),
        _branch(ck, lambda k: _cut(s, 2, hb_, [rule("boolI1", k)])),
    )
    on_false = lambda h: _cut(s, 1, ha_, [rule("boolI2", rule("orE2", h))])
    return _cases(ck, Checked(j), on_true, on_false)


# ---------------------------------------------------------------------------
# implication and the biconditional


@derived("impI")
def _imp_i(ck, ctx, node):
    """a : bool, [a : true |- b : true]  ==>  a -> b : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    a = _subject(s, "a", 0, BOOL)
    want_b = s.term("b")
    j1 = s.hypo(1, [J(a, T)], want=None if want_b is None else J(want_b, T), kind=T)
    b = j1.subject
    on_true = lambda h: rule("impIE", rule("orI2", Checked(j1), a=Not(a)))
    on_false = lambda h: rule("impIE", rule("orI1", rule("negIE2", h), b=b))
    return _cases(ck, Checked(J(a, BOOL)), on_true, on_false)


def _modus_ponens(ck: Checker, imp_proof: ProofNode, arg: ProofNode, a: Term, b: Term) -> Rule:
    """From ``a -> b : true`` and ``a : true`` conclude ``b : true``."""
    return rule(
        "orE1",
        rule("impIE", imp_proof, reverse=True),
        _branch(ck, lambda h: _explode(h, arg, a, b)),
        _branch(ck, lambda h: h),
    )


@derived("impE")
def _imp_e(ck, ctx, node):
    """a -> b : true, a : true  ==>  b : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    j = s.get(0, T)
    imp = s.shape(0, j, Imp, "an implication")
    s.expect(1, J(imp.l, T))
    return _modus_ponens(ck, Checked(j), Checked(J(imp.l, T)), imp.l, imp.r)


@derived("iffI")
def _iff_i(ck, ctx, node):
    """a : bool, b : bool, [a : true |- b : true], [b : true |- a : true]  ==>  a <-> b : true"""
    s = _Step(ck, ctx, node)
    s.arity(4)
    a = _subject(s, "a", 0, BOOL)
    b = _subject(s, "b", 1, BOOL)
    there = rule("impI", Checked(J(a, BOOL)), s.subs[2], b=b)
    back = rule("impI", Checked(J(b, BOOL)), s.subs[3], b=a)
    return rule("iffIE", rule("andI1", there, back))


def _iff_parts(s: _Step) -> tuple[Judgment, Iff]:
    j = s.get(0, T)
    return j, s.shape(0, j, Iff, "a biconditional")


def _unfold_iff(j: Judgment) -> Rule:
    return rule("iffIE", Checked(j), reverse=True)


@derived("iffE1")
def _iff_e1(ck, ctx, node):
    """a <-> b : true, a : true  ==>  b : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    j, iff = _iff_parts(s)
    s.expect(1, J(iff.l, T))
    return _modus_ponens(ck, rule("andE1", _unfold_iff(j)), Checked(J(iff.l, T)), iff.l, iff.r)


@derived("iffE2")
def _iff_e2(ck, ctx, node):
    """a <-> b : true, b : true  ==>  a : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    j, iff = _iff_parts(s)
    s.expect(1, J(iff.r, T))
    return _modus_ponens(ck, rule("andE2", _unfold_iff(j)), Checked(J(iff.r, T)), iff.r, iff.l)


@derived("iffE")
def _iff_e(ck, ctx, node):
    """a <-> b : true  ==>  (a : true <=> b : true)"""
    return Rule("iffE2" if node.inst.reverse else "iffE1", Inst(), node.subs, node.span)


@derived("iffE3")
def _iff_e3(ck, ctx, node):
    """a <-> b : true  ==>  a -> b : true"""
    s = _Step(ck, ctx, node)
    s.arity(1)
    j, _ = _iff_parts(s)
    return rule("andE1", _unfold_iff(j))


@derived("iffE4")
def _iff_e4(ck, ctx, node):
    """a <-> b : true  ==>  b -> a : true"""
    s = _Step(ck, ctx, node)
    s.arity(1)
    j, _ = _iff_parts(s)
    return rule("andE2", _unfold_iff(j))


def _iff_te(ck: Checker, ctx: Context, node: Rule, left: bool) -> ProofNode:
    s = _Step(ck, ctx, node)
    s.arity(1)
    j = s.get(0, BOOL)
    iff = s.shape(0, j, Iff, "a biconditional")
    a, b = iff.l, iff.r
    unfolded = rule("iffIE", Checked(j), reverse=True)  # (a -> b) and (b -> a) : bool
    # with the conjunction true, split the implication whose consequent is the goal
    fwd, bwd = ("andE1", "andE2") if left else ("andE2", "andE1")
    goal, other = (a, b) if left else (b, a)

    def on_true(h):
        # (other -> goal) : true  gives  not other : true  or  goal : true
        return rule(
            "orE1",
            rule("impIE", rule(bwd, h), reverse=True),
            _branch(ck, lambda k: _from_not_other(ck, h, k, fwd, other, goal)),
            _branch(ck, lambda k: _wrap_bool(rule("boolI1", k))),
        )

    def on_false(h):
        # one implication is false: (not p or q) : false gives  p : true  and  q : false
        return rule(
            "andE3",
            h,
            _branch(ck, lambda k: _from_false_imp(k, first=True, goal_is_antecedent=left)),
            _branch(ck, lambda k: _from_false_imp(k, first=False, goal_is_antecedent=left)),
        )

    return rule("judgTE", _cases(ck, unfolded, on_true, on_false))


def _from_not_other(ck: Checker, conj: Hyp, k: Hyp, fwd: str, other: Term, goal: Term) -> ProofNode:
    """``not other : true`` in hand; use the other implication ``goal -> other``.

    ``goal -> other`` unfolds to ``not goal or other``; the left case makes
    ``goal`` false, the right case contradicts ``not other``.
    """
    target = Has(goal, BOOL)
    return rule(
        "orE1",
        rule("impIE", rule(fwd, conj), reverse=True),
        _branch(ck, lambda m: _wrap_bool(rule("boolI2", rule("negIE2", m, reverse=True)))),
        _branch(ck, lambda m: _explode(k, m, other, target)),
    )


def _from_false_imp(k: Hyp, first: bool, goal_is_antecedent: bool) -> ProofNode:
    """From ``(p -> q) : false`` read off the truth value of p or q.

    ``(not p or q) : false`` gives ``not p : false`` (so p true) and
    ``q : false``.  The first conjunct is ``a -> b``, the second ``b -> a``.
    """
    disj = rule("impIE", k, reverse=True)
    # the goal is the antecedent of the first conjunct and the consequent of the second
    goal_is_p = first == goal_is_antecedent
    if goal_is_p:
        return _wrap_bool(rule("boolI1", rule("negIE1", rule("orE2", disj), reverse=True)))
    return _wrap_bool(rule("boolI2", rule("orE3", disj)))


@derived("iffTE1")
def _iff_te1(ck, ctx, node):
    """a <-> b : bool  ==>  a : bool"""
    return _iff_te(ck, ctx, node, left=True)


@derived("iffTE2")
def _iff_te2(ck, ctx, node):
    """a <-> b : bool  ==>  b : bool"""
    return _iff_te(ck, ctx, node, left=False)


# ---------------------------------------------------------------------------
# induction and definitions


@derived("quantInd")
def _quant_ind(ck, ctx, node):
    """p[0] : true, [x : nat, p[x] : true |- p[S(x)] : true]  ==>  forall x. (x : nat) -> p[x] : true"""
    s = _Step(ck, ctx, node)
    s.arity(2)
    p = s.template("p")
    (x,) = s.fresh(1)
    avoid = ctx.names() | proof_names(node) | free_vars(p.body) | {x, p.hole}
    y = fresh_name(p.hole, avoid)
    hy, hn = ck.fresh_label(), ck.fresh_label()
    induction = Rule(
        "ind",
        Inst({"a": Var(y)}, {"p": p}, None, (x,), False),
        (s.subs[0], s.subs[1], rule("judgTE", Hyp(hn))),
    )
    body = rule("impI", rule("natTI", Hyp(hy)), Assume((hn,), induction), a=Has(Var(y), NAT))
    return rule("forallI1", Assume((hy,), body), fresh=(y,))


@derived("defIEk")
def _def_iek(ck, ctx, node):
    """defIE at any judgment kind, through judgments-as-terms."""
    s = _Step(ck, ctx, node)
    s.arity(2)
    sub = s._sub(1)
    if isinstance(sub, Hole):
        s._fail(1, "premise omitted")
    j = ck.check(ctx, sub)
    p = s.template("p", default_identity=True)
    wrapped = Template(p.hole, Has(p.body, j.kind))
    inner = Rule(
        "defIE",
        Inst({}, {"p": wrapped}, node.inst.args, (), node.inst.reverse),
        (s.subs[0], rule("judgTI", Checked(j))),
    )
    return rule("judgTE", inner)


# ---------------------------------------------------------------------------
# registry API


def expand_derived(name: str, node: Rule, ctx: Context | None = None, env: DefEnv | None = None,
                   cfg: CheckConfig | None = None) -> ProofNode:
    """One level of expansion of a derived-rule application."""
    if name not in EXPANDERS:
        raise UnknownDerivedRule(f"no derived rule named {name!r}")
    ck = Checker(env or DefEnv(), cfg, derived=EXPANDERS, allow_placeholders=True)
    return EXPANDERS[name](ck, ctx or Context(), Rule(name, node.inst, node.subs, node.span))


def _ph(text: str, *hyps: str, scope=("a", "b", "c", "x")) -> ProofNode:
    from .parser import parse_judgment

    goal = parse_judgment(text, scope)
    if not hyps:
        return Placeholder(goal)
    labels = tuple(f"h{i}" for i in range(len(hyps)))
    reqs = tuple(parse_judgment(h, scope) for h in hyps)
    return Assume(labels, Placeholder(goal, reqs, tuple(Hyp(l) for l in labels)))


def _t(text: str) -> Term:
    from .parser import parse_term

    return parse_term(text, ("a", "b", "c", "x"))


def _inst(*subs, reverse=False, fresh=(), templates=None, **terms) -> tuple[Inst, tuple]:
    return Inst({k: _t(v) for k, v in terms.items()}, templates or {}, None, tuple(fresh), reverse), subs


# schematic instances: rule -> (premises, expected conclusion)
def _schemas() -> dict[str, list[tuple[Inst, tuple, str]]]:
    p = Template("x", _t("q(x)"))
    return {
        "negTIE": [(*_inst(_ph("a : bool")), "not a : bool"),
                   (*_inst(_ph("not a : bool"), reverse=True), "a : bool")],
        "boolContra": [(*_inst(_ph("a : bool"), _ph("a : true", "a : false")), "a : true")],
        "contraNeg1": [(*_inst(_ph("a : bool"), _ph("a : true", "not a : true")), "a : true")],
        "contraNeg2": [(*_inst(_ph("a : bool"), _ph("not a : true", "a : true")), "not a : true")],
        "negI": [(*_inst(_ph("a : bool"), _ph("?b0 : true", "a : true"), fresh=("b0",)), "not a : true")],
        "negE": [(*_inst(_ph("not a : true"), _ph("a : true"), b="b"), "b : true")],
        "dblNegIE": [(*_inst(_ph("a : true")), "not not a : true"),
                     (*_inst(_ph("not not a : true"), reverse=True), "a : true")],
        "andTI": [(*_inst(_ph("a : bool"), _ph("b : bool")), "a and b : bool")],
        "orTI": [(*_inst(_ph("a : bool"), _ph("b : bool")), "a or b : bool")],
        "andTE": [(*_inst(_ph("a and b : bool"), _ph("c : true", "a : bool"), _ph("c : true", "b : bool")),
                   "c : true")],
        "orTE": [(*_inst(_ph("a or b : bool"), _ph("c : true", "a : bool"), _ph("c : true", "b : bool")),
                  "c : true")],
        "impI": [(*_inst(_ph("a : bool"), _ph("b : true", "a : true")), "a -> b : true")],
        "impE": [(*_inst(_ph("a -> b : true"), _ph("a : true")), "b : true")],
        "iffI": [(*_inst(_ph("a : bool"), _ph("b : bool"), _ph("b : true", "a : true"), _ph("a : true", "b : true")),
                  "a <-> b : true")],
        "iffE1": [(*_inst(_ph("a <-> b : true"), _ph("a : true")), "b : true")],
        "iffE2": [(*_inst(_ph("a <-> b : true"), _ph("b : true")), "a : true")],
        "iffE": [(*_inst(_ph("a <-> b : true"), _ph("a : true")), "b : true"),
                 (*_inst(_ph("a <-> b : true"), _ph("b : true"), reverse=True), "a : true")],
        "iffE3": [(*_inst(_ph("a <-> b : true")), "a -> b : true")],
        "iffE4": [(*_inst(_ph("a <-> b : true")), "b -> a : true")],
        "iffTE1": [(*_inst(_ph("a <-> b : bool")), "a : bool")],
        "iffTE2": [(*_inst(_ph("a <-> b : bool")), "b : bool")],
        "quantInd": [(*_inst(_ph("q(0) : true"), _ph("q(S(?n)) : true", "?n : nat", "q(?n) : true"),
                             fresh=("n",), templates={"p": p}),
                      "forall x. (x : nat) -> q(x) : true")],
        "defIEk": [(Inst(args=()), (UseDef("d"), _ph("not d : bool")), "d : bool"),
                   (Inst(args=(), reverse=True), (UseDef("d"), _ph("d : bool")), "not d : bool")],
    }


@dataclass(frozen=True)
class DerivationResult:
    name: str
    ok: bool
    conclusion: Judgment | None
    expected: Judgment
    error: Exception | None = None


def verify_all_derivations(strict: bool = False) -> list[DerivationResult]:
    """Check every registered derived rule on schematic premises.

    With ``strict``, the first failure raises DerivationBroken.
    """
    from .defenv import Definition, add_def
    from .parser import parse_judgment, parse_term

    env = add_def(DefEnv(), Definition("d", (), parse_term("not d")))
    results: list[DerivationResult] = []
    schemas = _schemas()
    missing = set(EXPANDERS) - set(schemas)
    if missing:
        raise RuntimeError(f"no schematic instance for {sorted(missing)}")
    for name, instances in schemas.items():
        for inst, subs, expected_text in instances:
            expected = parse_judgment(expected_text, ("a", "b", "c"))
            ck = Checker(env, CheckConfig(), derived=EXPANDERS, allow_placeholders=True)
            try:
                got = ck.check(Context(), Rule(name, inst, tuple(subs)))
            except CheckError as e:
                results.append(DerivationResult(name, False, None, expected, e))
                if strict:
                    raise DerivationBroken(name, e) from e
                continue
            ok = got.alpha_eq(expected)
            err = None if ok else CheckError("wrong conclusion", expected=expected, found=got)
            results.append(DerivationResult(name, ok, got, expected, err))
            if strict and not ok:
                raise DerivationBroken(name, err)
    return results
