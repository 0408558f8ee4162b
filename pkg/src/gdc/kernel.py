"""The trusted proof checker.

Every primitive inference rule is a small function from a rule application
(``_Step``) to the judgment it concludes.  Hypothetical premises are checked
under the context extended with the hypotheses the rule introduces, and the
variables those premises bind must stay local to them.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import defenv as _defenv
from .defenv import DefEnv, Definition
from .judgment import Context, Judgment
from .proof import (
    Assume,
    Checked,
    Hole,
    Hyp,
    LemmaRef,
    Placeholder,
    ProofNode,
    Rule,
    Span,
    UseDef,
)
from .term import (
    App,
    And,
    Case,
    Eq,
    Exists,
    Forall,
    Has,
    If,
    Iff,
    Imp,
    JudgKind,
    LitFalse,
    LitTrue,
    Ne,
    Not,
    Or,
    Succ,
    Template,
    Term,
    Var,
    ZERO,
    Zero,
    alpha_eq,
    free_vars,
    subst,
)

T, F, BOOL, OBJ, NAT = JudgKind.TRUE, JudgKind.FALSE, JudgKind.BOOL, JudgKind.OBJ, JudgKind.NAT


class Discipline(enum.Enum):
    AT = "at"
    CT = "ct"
    DT = "dt"


@dataclass(frozen=True)
class CheckConfig:
    discipline: Discipline = Discipline.AT


# ---------------------------------------------------------------------------
# errors


class CheckError(Exception):
    code = "CheckError"

    def __init__(
        self,
        message: str,
        *,
        rule: str | None = None,
        index: int | None = None,
        expected: Judgment | None = None,
        found: Judgment | None = None,
        span: Span | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.rule = rule
        self.index = index
        self.expected = expected
        self.found = found
        self.span = span
        self.via: str | None = None

    def __str__(self) -> str:
        parts = []
        if self.rule is not None:
            where = self.rule if self.index is None else f"{self.rule} premise {self.index}"
            if self.via and self.via != self.rule:
                where += f" (in {self.via})"
            parts.append(where + ":")
        parts.append(self.message)
        if self.expected is not None:
            parts.append(f"expected `{self.expected}`")
        if self.found is not None:
            parts.append(f"found `{self.found}`")
        return " ".join(parts)


class UnknownRule(CheckError):
    code = "UnknownRule"


class PremiseShapeMismatch(CheckError):
    code = "PremiseShapeMismatch"


class MissingTypingPremise(CheckError):
    code = "MissingTypingPremise"


class MissingInstantiation(CheckError):
    code = "MissingInstantiation"


class HypothesisNotFound(CheckError):
    code = "HypothesisNotFound"


class VariableEscape(CheckError):
    code = "VariableEscape"


class ArityMismatch(CheckError):
    code = "ArityMismatch"


class NotDefined(CheckError):
    code = "NotDefined"


class DisciplineDisabled(CheckError):
    code = "DisciplineDisabled"


class GoalMismatch(CheckError):
    code = "GoalMismatch"


class RedefinedSymbol(CheckError):
    code = "RedefinedSymbol"


class DefinitionRejected(CheckError):
    """Wraps StrayFreeVariable / DuplicateParam from the definition environment."""

    def __init__(self, err: _defenv.DefinitionError):
        super().__init__(str(err))
        self.code = err.code


# ---------------------------------------------------------------------------
# lemmas


@dataclass(frozen=True)
class Lemma:
    name: str
    judgment: Judgment
    hyps: tuple[Judgment, ...] = ()
    variables: frozenset[str] = frozenset()


# ---------------------------------------------------------------------------
# the checker

Expander = Callable[["Checker", Context, Rule], ProofNode]


class Checker:
    """Checks proof trees against one environment, configuration and lemma table."""

    def __init__(
        self,
        env: DefEnv,
        cfg: CheckConfig | None = None,
        lemmas: Mapping[str, Lemma] | None = None,
        derived: Mapping[str, Expander] | None = None,
        allow_placeholders: bool = False,
    ):
        self.env = env
        self.cfg = cfg or CheckConfig()
        self.lemmas = dict(lemmas or {})
        self.derived = dict(derived or {})
        self.allow_placeholders = allow_placeholders
        self.dependencies: list[str] = []
        self._labels = itertools.count(1)

    def fresh_label(self) -> str:
        return f"%{next(self._labels)}"

    def check(self, ctx: Context, node: ProofNode) -> Judgment:
        try:
            return self._check(ctx, node)
        except CheckError as e:
            if e.span is None:
                e.span = getattr(node, "span", None)
            raise

    def _check(self, ctx: Context, node: ProofNode) -> Judgment:
        match node:
            case Hyp(label):
                j = ctx.lookup(label)
                if j is None:
                    raise HypothesisNotFound(f"no hypothesis labelled {label!r} in scope")
                return j
            case LemmaRef(name, sigma):
                return self._lemma(ctx, name, sigma)
            case Placeholder(j, requires, uses):
                if not self.allow_placeholders:
                    raise UnknownRule("placeholders are only allowed when verifying derived rules")
                if uses:
                    for r, u in zip(requires, uses, strict=True):
                        got = self.check(ctx, u)
                        if not got.alpha_eq(r):
                            raise PremiseShapeMismatch(
                                "placeholder premise proves the wrong judgment", expected=r, found=got
                            )
                else:
                    for r in requires:
                        if not ctx.contains(r):
                            raise PremiseShapeMismatch(f"placeholder requires `{r}`, which is not in scope")
                return j
            case Checked(j):
                return j
            case Hole(origin, idx):
                raise PremiseShapeMismatch("omitted premise used as a proof", rule=origin, index=idx)
            case UseDef(symbol):
                raise PremiseShapeMismatch(f"(usedef {symbol}) is only valid as the first premise of defIE")
            case Assume(labels, body):
                if labels:
                    raise PremiseShapeMismatch("hypothetical subproof where no hypotheses are introduced")
                return self.check(ctx, body)
            case Rule(name):
                self._check_arities(node)
                if name in PRIMITIVES:
                    if name in DT_RULES and self.cfg.discipline is not Discipline.DT:
                        raise DisciplineDisabled(
                            f"{name} is only available under the DT discipline", rule=name
                        )
                    return PRIMITIVES[name](_Step(self, ctx, node))
                if name in self.derived:
                    return self._derived(ctx, node)
                raise UnknownRule(f"unknown rule {name!r}", rule=name)
        raise TypeError(f"not a proof node: {node!r}")

    def _derived(self, ctx: Context, node: Rule) -> Judgment:
        subs = tuple(
            Hole(node.name, i, s.span) if isinstance(s, Hole) and s.origin is None else s
            for i, s in enumerate(node.subs)
        )
        node = Rule(node.name, node.inst, subs, node.span)
        expansion = self.derived[node.name](self, ctx, node)
        try:
            return self.check(ctx, expansion)
        except CheckError as e:
            if e.via is None:
                e.via = node.name
            raise

    def _lemma(self, ctx: Context, name: str, sigma: Mapping[str, Term]) -> Judgment:
        lemma = self.lemmas.get(name)
        if lemma is None:
            raise HypothesisNotFound(f"no proven lemma named {name!r}")
        extra = set(sigma) - lemma.variables
        if extra:
            raise MissingInstantiation(
                f"lemma {name} has no variable(s) {', '.join(sorted(extra))} to instantiate"
            )
        for h in lemma.hyps:
            hi = h.subst(sigma)
            if not ctx.contains(hi):
                raise HypothesisNotFound(f"lemma {name} needs hypothesis `{hi}` in scope")
        if name not in self.dependencies:
            self.dependencies.append(name)
        return lemma.judgment.subst(sigma)

    def _check_arities(self, node: Rule) -> None:
        inst = node.inst
        terms = [*inst.terms.values(), *(t.body for t in inst.templates.values()), *(inst.args or ())]
        for t in terms:
            try:
                _defenv.check_arities(self.env, t)
            except _defenv.ArityMismatch as e:
                raise ArityMismatch(str(e), rule=node.name) from None


def check(
    env: DefEnv,
    cfg: CheckConfig | None,
    ctx: Context | Sequence[tuple[str, Judgment]],
    proof: ProofNode,
    *,
    lemmas: Mapping[str, Lemma] | None = None,
    derived: Mapping[str, Expander] | None = None,
) -> Judgment:
    """Check ``proof`` under the hypotheses ``ctx`` and return what it proves."""
    if not isinstance(ctx, Context):
        ctx = Context(tuple(ctx))
    if derived is None:
        from .derived import EXPANDERS

        derived = EXPANDERS
    return Checker(env, cfg, lemmas, derived).check(ctx, proof)


# ---------------------------------------------------------------------------
# per-application helper


class _Step:
    def __init__(self, checker: Checker, ctx: Context, node: Rule):
        self.ck = checker
        self.ctx = ctx
        self.node = node
        self.name = node.name
        self.inst = node.inst
        self.subs = node.subs
        self.reverse = node.inst.reverse
        self._bound: set[str] = set()

    # -- instantiation data

    def term(self, key: str) -> Term | None:
        return self.inst.terms.get(key)

    def need(self, key: str) -> Term:
        t = self.inst.terms.get(key)
        if t is None:
            raise MissingInstantiation(f"supply term {key!r} in (inst ...)", rule=self.name)
        return t

    def template(self, key: str = "p", default_identity: bool = False) -> Template:
        tpl = self.inst.templates.get(key)
        if tpl is None:
            if default_identity:
                return Template("%hole", Var("%hole"))
            raise MissingInstantiation(f"supply template {key!r} in (inst ...)", rule=self.name)
        return tpl

    def fresh(self, n: int = 1) -> tuple[str, ...]:
        names = self.inst.fresh
        if len(names) != n:
            raise MissingInstantiation(
                f"expects {n} fresh variable(s) in (fresh ...), got {len(names)}", rule=self.name
            )
        return names

    def arity(self, n: int) -> None:
        if len(self.subs) != n:
            raise PremiseShapeMismatch(
                f"expects {n} premise(s), got {len(self.subs)}", rule=self.name
            )

    # -- premises

    def _fail(self, i: int, msg: str, expected: Judgment | None = None, found: Judgment | None = None,
              kind: JudgKind | None = None):
        typing = (expected.is_typing if expected is not None else kind in (BOOL, OBJ, NAT))
        cls = MissingTypingPremise if typing else PremiseShapeMismatch
        sub = self.subs[i] if i < len(self.subs) else None
        rule, index = self.name, i
        if isinstance(sub, Hole) and sub.origin is not None:
            rule, index = sub.origin, sub.origin_index
        raise cls(msg, rule=rule, index=index, expected=expected, found=found)

    def _sub(self, i: int) -> ProofNode:
        if i >= len(self.subs):
            raise PremiseShapeMismatch(
                f"premise {i} missing: expects more than {len(self.subs)} premise(s)", rule=self.name, index=i
            )
        return self.subs[i]

    def get(self, i: int, kind: JudgKind) -> Judgment:
        sub = self._sub(i)
        if isinstance(sub, Hole):
            self._fail(i, f"premise omitted (a `{kind}` judgment is required)", kind=kind)
        j = self.ck.check(self.ctx, sub)
        if j.kind is not kind:
            self._fail(i, f"wrong judgment kind (needs `{kind}`)", found=j, kind=kind)
        self._bound.update(free_vars(j.subject))
        return j

    def expect(self, i: int, want: Judgment) -> Judgment:
        sub = self._sub(i)
        if isinstance(sub, Hole):
            self._fail(i, "premise omitted", expected=want)
        j = self.ck.check(self.ctx, sub)
        if not j.alpha_eq(want):
            self._fail(i, "premise does not match", expected=want, found=j)
        self._bound.update(free_vars(j.subject))
        return j

    def shape(self, i: int, j: Judgment, cls: type, what: str):
        if not isinstance(j.subject, cls):
            self._fail(i, f"premise must be {what}", found=j, kind=j.kind)
        return j.subject

    def hypo(
        self,
        i: int,
        hyps: Sequence[Judgment],
        fresh: Sequence[str] = (),
        want: Judgment | None = None,
        kind: JudgKind | None = None,
    ) -> Judgment:
        sub = self._sub(i)
        if isinstance(sub, Hole):
            self._fail(i, "hypothetical premise omitted", expected=want, kind=kind)
        self._check_fresh(fresh, hyps)
        labels: tuple[str, ...] = ()
        body = sub
        if isinstance(sub, Assume):
            labels, body = sub.labels, sub.body
            if labels and len(labels) != len(hyps):
                raise PremiseShapeMismatch(
                    f"hypothetical premise {i} introduces {len(hyps)} hypothesis(es), "
                    f"{len(labels)} label(s) given",
                    rule=self.name,
                    index=i,
                )
            for stated, actual in zip(sub.stated, hyps):
                if stated is not None and not stated.alpha_eq(actual):
                    raise PremiseShapeMismatch(
                        f"hypothetical premise {i} states a different hypothesis",
                        rule=self.name,
                        index=i,
                        expected=actual,
                        found=stated,
                    )
        ctx = self.ctx.extend(zip(labels, hyps), fresh)
        j = self.ck.check(ctx, body)
        if want is not None and not j.alpha_eq(want):
            self._fail(i, "hypothetical premise concludes the wrong judgment", expected=want, found=j)
        if kind is not None and j.kind is not kind:
            self._fail(i, f"hypothetical premise must conclude a `{kind}` judgment", found=j, kind=kind)
        return j

    def _check_fresh(self, fresh: Sequence[str], hyps: Sequence[Judgment]) -> None:
        if not fresh:
            return
        taken = set(self.ctx.names()) | self._bound
        for t in self.inst.terms.values():
            taken |= free_vars(t)
        for tpl in self.inst.templates.values():
            taken |= free_vars(tpl.body) - {tpl.hole}
        for t in self.inst.args or ():
            taken |= free_vars(t)
        for x in fresh:
            if x in taken:
                raise VariableEscape(
                    f"variable {x} is not fresh: it already occurs in the context or instantiation",
                    rule=self.name,
                )

    def no_escape(self, j: Judgment, fresh: Iterable[str]) -> Judgment:
        leaked = free_vars(j.subject) & set(fresh)
        if leaked:
            raise VariableEscape(
                f"ephemeral variable(s) {', '.join(sorted(leaked))} escape into the conclusion",
                rule=self.name,
                found=j,
            )
        return j


PRIMITIVES: dict[str, Callable[[_Step], Judgment]] = {}
DT_RULES = frozenset({"dtBoolNat1", "dtBoolNat2"})


def primitive(name: str):
    def register(fn):
        PRIMITIVES[name] = fn
        return fn

    return register


def J(t: Term, k: JudgKind) -> Judgment:
    return Judgment(t, k)


# ---------------------------------------------------------------------------
# literal constants


@primitive("trueAx")
def _true_ax(s: _Step):
    s.arity(0)
    return J(LitTrue(), T)


@primitive("falseAx")
def _false_ax(s: _Step):
    s.arity(0)
    return J(LitFalse(), F)


# ---------------------------------------------------------------------------
# booleans and judgments-as-terms


@primitive("boolI1")
def _bool_i1(s: _Step):
    s.arity(1)
    return J(s.get(0, T).subject, BOOL)


@primitive("boolI2")
def _bool_i2(s: _Step):
    s.arity(1)
    return J(s.get(0, F).subject, BOOL)


def _subject(s: _Step, key: str, i: int, kind: JudgKind) -> Term:
    """Term ``key`` from the instantiation, else read off premise ``i``; premise ``i`` is checked."""
    t = s.term(key)
    if t is None:
        return s.get(i, kind).subject
    s.expect(i, J(t, kind))
    return t


def _case_split(s: _Step, first: int, hyps1, hyps2, fresh1=(), fresh2=()) -> Judgment:
    """Two hypothetical premises that must reach the same ``c : true``."""
    c = s.term("c")
    if c is None:
        c = s.hypo(first, hyps1, fresh1, kind=T).subject
    else:
        s.hypo(first, hyps1, fresh1, want=J(c, T))
    s.hypo(first + 1, hyps2, fresh2, want=J(c, T))
    return J(c, T)


@primitive("boolE")
def _bool_e(s: _Step):
    s.arity(3)
    a = _subject(s, "a", 0, BOOL)
    return _case_split(s, 1, [J(a, T)], [J(a, F)])


@primitive("judgTI")
def _judg_ti(s: _Step):
    s.arity(1)
    sub = s._sub(0)
    if isinstance(sub, Hole):
        s._fail(0, "premise omitted")
    j = s.ck.check(s.ctx, sub)
    return J(Has(j.subject, j.kind), T)


@primitive("judgTE")
def _judg_te(s: _Step):
    s.arity(1)
    has = s.shape(0, s.get(0, T), Has, "a judgment term `(t : k)`")
    return J(has.t, has.kind)


# ---------------------------------------------------------------------------
# negation


@primitive("negIE1")
def _neg_ie1(s: _Step):
    s.arity(1)
    if not s.reverse:
        return J(Not(s.get(0, T).subject), F)
    n = s.shape(0, s.get(0, F), Not, "a negation")
    return J(n.t, T)


@primitive("negIE2")
def _neg_ie2(s: _Step):
    s.arity(1)
    if not s.reverse:
        return J(Not(s.get(0, F).subject), T)
    n = s.shape(0, s.get(0, T), Not, "a negation")
    return J(n.t, F)


# ---------------------------------------------------------------------------
# definitions


@primitive("defIE")
def _def_ie(s: _Step):
    s.arity(2)
    use = s.subs[0]
    if not isinstance(use, UseDef):
        raise PremiseShapeMismatch("first premise must be (usedef <symbol>)", rule=s.name, index=0)
    d = s.ck.env.get(use.symbol)
    if d is None:
        raise NotDefined(f"{use.symbol} is not defined at this point", rule=s.name, index=0)
    args = s.inst.args if s.inst.args is not None else ()
    if len(args) != d.arity:
        raise ArityMismatch(
            f"{d.symbol} takes {d.arity} argument(s), (args ...) supplies {len(args)}", rule=s.name
        )
    p = s.template("p", default_identity=True)
    expanded = p(d.expand(args))
    folded = p(App(d.symbol, tuple(args)))
    if not s.reverse:
        s.expect(1, J(expanded, T))
        return J(folded, T)
    s.expect(1, J(folded, T))
    return J(expanded, T)


# ---------------------------------------------------------------------------
# conjunction and disjunction


@primitive("andI1")
def _and_i1(s: _Step):
    s.arity(2)
    return J(And(s.get(0, T).subject, s.get(1, T).subject), T)


@primitive("andI2")
def _and_i2(s: _Step):
    s.arity(1)
    a = s.get(0, F).subject
    return J(And(a, s.need("b")), F)


@primitive("andI3")
def _and_i3(s: _Step):
    s.arity(1)
    b = s.get(0, F).subject
    return J(And(s.need("a"), b), F)


@primitive("andE1")
def _and_e1(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, T), And, "a conjunction").l, T)


@primitive("andE2")
def _and_e2(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, T), And, "a conjunction").r, T)


@primitive("andE3")
def _and_e3(s: _Step):
    s.arity(3)
    conj = s.shape(0, s.get(0, F), And, "a conjunction")
    return _case_split(s, 1, [J(conj.l, F)], [J(conj.r, F)])


@primitive("orI1")
def _or_i1(s: _Step):
    s.arity(1)
    a = s.get(0, T).subject
    return J(Or(a, s.need("b")), T)


@primitive("orI2")
def _or_i2(s: _Step):
    s.arity(1)
    b = s.get(0, T).subject
    return J(Or(s.need("a"), b), T)


@primitive("orI3")
def _or_i3(s: _Step):
    s.arity(2)
    return J(Or(s.get(0, F).subject, s.get(1, F).subject), F)


@primitive("orE1")
def _or_e1(s: _Step):
    s.arity(3)
    disj = s.shape(0, s.get(0, T), Or, "a disjunction")
    return _case_split(s, 1, [J(disj.l, T)], [J(disj.r, T)])


@primitive("orE2")
def _or_e2(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, F), Or, "a disjunction").l, F)


@primitive("orE3")
def _or_e3(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, F), Or, "a disjunction").r, F)


# ---------------------------------------------------------------------------
# term-level equivalences (bidirectional); usable at kinds true, false, bool

EQUIV_KINDS = (T, F, BOOL)


def _equivalence(s: _Step, fwd: Callable[[Term], Term | None], rev: Callable[[Term], Term | None], what: str):
    s.arity(1)
    sub = s._sub(0)
    if isinstance(sub, Hole):
        s._fail(0, "premise omitted")
    j = s.ck.check(s.ctx, sub)
    if j.kind not in EQUIV_KINDS:
        s._fail(0, "equivalence rules apply to true, false and bool judgments", found=j)
    out = (rev if s.reverse else fwd)(j.subject)
    if out is None:
        side = "conclusion" if s.reverse else "premise"
        s._fail(0, f"premise must have the {side} shape of {what}", found=j)
    return J(out, j.kind)


def _equiv_rule(name: str, fwd, rev, what: str):
    PRIMITIVES[name] = lambda s: _equivalence(s, fwd, rev, what)


def _demorgan_and(t: Term):
    match t:
        case Not(Or(Not(p), Not(q))):
            return And(p, q)
    return None


def _demorgan_or(t: Term):
    match t:
        case Not(And(Not(p), Not(q))):
            return Or(p, q)
    return None


def _imp_fwd(t: Term):
    match t:
        case Or(Not(p), q):
            return Imp(p, q)
    return None


def _iff_fwd(t: Term):
    match t:
        case And(Imp(p, q), Imp(q2, p2)) if alpha_eq(p, p2) and alpha_eq(q, q2):
            return Iff(p, q)
    return None


def _bool_fwd(t: Term):
    match t:
        case Or(p, Not(p2)) if alpha_eq(p, p2):
            return p
    return None


def _forall_fwd(t: Term):
    match t:
        case Not(Exists(x, Not(body))):
            return Forall(x, body)
    return None


def _exists_fwd(t: Term):
    match t:
        case Not(Forall(x, Not(body))):
            return Exists(x, body)
    return None


def _match(cls):
    return lambda t: t if isinstance(t, cls) else None


_equiv_rule(
    "andIE", _demorgan_and,
    lambda t: Not(Or(Not(t.l), Not(t.r))) if isinstance(t, And) else None,
    "not (not p or not q)  <=>  p and q",
)
_equiv_rule(
    "orIE", _demorgan_or,
    lambda t: Not(And(Not(t.l), Not(t.r))) if isinstance(t, Or) else None,
    "not (not p and not q)  <=>  p or q",
)
_equiv_rule(
    "impIE", _imp_fwd,
    lambda t: Or(Not(t.l), t.r) if isinstance(t, Imp) else None,
    "not p or q  <=>  p -> q",
)
_equiv_rule(
    "iffIE", _iff_fwd,
    lambda t: And(Imp(t.l, t.r), Imp(t.r, t.l)) if isinstance(t, Iff) else None,
    "(p -> q) and (q -> p)  <=>  p <-> q",
)
_equiv_rule(
    "forallIE", _forall_fwd,
    lambda t: Not(Exists(t.x, Not(t.body))) if isinstance(t, Forall) else None,
    "not exists x. not p  <=>  forall x. p",
)
_equiv_rule(
    "existsIE", _exists_fwd,
    lambda t: Not(Forall(t.x, Not(t.body))) if isinstance(t, Exists) else None,
    "not forall x. not p  <=>  exists x. p",
)


@primitive("boolIE")
def _bool_ie(s: _Step):
    s.arity(1)
    if not s.reverse:
        j = s.get(0, T)
        p = _bool_fwd(j.subject)
        if p is None:
            s._fail(0, "premise must be `p or not p : true`", found=j)
        return J(p, BOOL)
    p = s.get(0, BOOL).subject
    return J(Or(p, Not(p)), T)


# ---------------------------------------------------------------------------
# quantifiers


@primitive("forallI1")
def _forall_i1(s: _Step):
    s.arity(1)
    (x,) = s.fresh(1)
    j = s.hypo(0, [J(Var(x), OBJ)], [x], kind=T)
    return J(Forall(x, j.subject), T)


@primitive("forallI2")
def _forall_i2(s: _Step):
    s.arity(2)
    p = s.template("p")
    a = _subject(s, "a", 0, OBJ)
    s.expect(1, J(p(a), F))
    return J(Forall(p.hole, p.body), F)


@primitive("forallE1")
def _forall_e1(s: _Step):
    s.arity(2)
    q = s.shape(0, s.get(0, T), Forall, "a universal")
    a = _subject(s, "a", 1, OBJ)
    return J(subst(q.body, q.x, a), T)


@primitive("forallE2")
def _forall_e2(s: _Step):
    s.arity(2)
    q = s.shape(0, s.get(0, F), Forall, "a universal")
    (v,) = s.fresh(1)
    hyps = [J(Var(v), OBJ), J(subst(q.body, q.x, Var(v)), F)]
    want = s.term("q")
    j = s.hypo(1, hyps, [v], want=None if want is None else J(want, T), kind=T)
    return s.no_escape(j, [v])


@primitive("existsI1")
def _exists_i1(s: _Step):
    s.arity(2)
    p = s.template("p")
    a = _subject(s, "a", 0, OBJ)
    s.expect(1, J(p(a), T))
    return J(Exists(p.hole, p.body), T)


@primitive("existsE1")
def _exists_e1(s: _Step):
    s.arity(2)
    q = s.shape(0, s.get(0, T), Exists, "an existential")
    (v,) = s.fresh(1)
    hyps = [J(Var(v), OBJ), J(subst(q.body, q.x, Var(v)), T)]
    want = s.term("q")
    j = s.hypo(1, hyps, [v], want=None if want is None else J(want, T), kind=T)
    return s.no_escape(j, [v])


@primitive("existsI2")
def _exists_i2(s: _Step):
    s.arity(1)
    (x,) = s.fresh(1)
    j = s.hypo(0, [J(Var(x), OBJ)], [x], kind=F)
    return J(Exists(x, j.subject), F)


@primitive("existsE2")
def _exists_e2(s: _Step):
    s.arity(2)
    q = s.shape(0, s.get(0, F), Exists, "an existential")
    a = _subject(s, "a", 1, OBJ)
    return J(subst(q.body, q.x, a), F)


@primitive("forallTI")
def _forall_ti(s: _Step):
    s.arity(1)
    (x,) = s.fresh(1)
    j = s.hypo(0, [J(Var(x), OBJ)], [x], kind=BOOL)
    return J(Forall(x, j.subject), BOOL)


@primitive("existsTI")
def _exists_ti(s: _Step):
    s.arity(1)
    (x,) = s.fresh(1)
    j = s.hypo(0, [J(Var(x), OBJ)], [x], kind=BOOL)
    return J(Exists(x, j.subject), BOOL)


# ---------------------------------------------------------------------------
# equality and inequality


@primitive("eqR")
def _eq_r(s: _Step):
    s.arity(1)
    a = s.get(0, OBJ).subject
    return J(Eq(a, a), T)


@primitive("eqS")
def _eq_s(s: _Step):
    s.arity(1)
    e = s.shape(0, s.get(0, T), Eq, "an equality")
    return J(Eq(e.r, e.l), T)


@primitive("eqT")
def _eq_t(s: _Step):
    s.arity(2)
    e1 = s.shape(0, s.get(0, T), Eq, "an equality")
    j2 = s.get(1, T)
    e2 = s.shape(1, j2, Eq, "an equality")
    if not alpha_eq(e1.r, e2.l):
        s._fail(1, "middle terms differ", expected=J(Eq(e1.r, e2.r), T), found=j2)
    return J(Eq(e1.l, e2.r), T)


@primitive("eqE")
def _eq_e(s: _Step):
    s.arity(2)
    e = s.shape(0, s.get(0, T), Eq, "an equality")
    p = s.template("p")
    src, dst = (e.r, e.l) if s.reverse else (e.l, e.r)
    s.expect(1, J(p(src), T))
    return J(p(dst), T)


@primitive("eqTI")
def _eq_ti(s: _Step):
    s.arity(2)
    return J(Eq(s.get(0, OBJ).subject, s.get(1, OBJ).subject), BOOL)


@primitive("eqTE1")
def _eq_te1(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, BOOL), Eq, "an equality").l, OBJ)


@primitive("eqTE2")
def _eq_te2(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, BOOL), Eq, "an equality").r, OBJ)


@primitive("neIE")
def _ne_ie(s: _Step):
    s.arity(1)
    if not s.reverse:
        e = s.shape(0, s.get(0, F), Eq, "an equality")
        return J(Ne(e.l, e.r), T)
    n = s.shape(0, s.get(0, T), Ne, "an inequality")
    return J(Eq(n.l, n.r), F)


@primitive("neS")
def _ne_s(s: _Step):
    s.arity(1)
    n = s.shape(0, s.get(0, T), Ne, "an inequality")
    return J(Ne(n.r, n.l), T)


@primitive("neTI")
def _ne_ti(s: _Step):
    s.arity(2)
    return J(Ne(s.get(0, OBJ).subject, s.get(1, OBJ).subject), BOOL)


@primitive("neTE1")
def _ne_te1(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, BOOL), Ne, "an inequality").l, OBJ)


@primitive("neTE2")
def _ne_te2(s: _Step):
    s.arity(1)
    return J(s.shape(0, s.get(0, BOOL), Ne, "an inequality").r, OBJ)


# ---------------------------------------------------------------------------
# natural numbers


@primitive("zeroI")
def _zero_i(s: _Step):
    s.arity(0)
    return J(ZERO, NAT)


@primitive("succIE")
def _succ_ie(s: _Step):
    s.arity(1)
    if not s.reverse:
        return J(Succ(s.get(0, NAT).subject), NAT)
    return J(s.shape(0, s.get(0, NAT), Succ, "a successor").t, NAT)


def _succ_pair(s: _Step, cls, what: str):
    s.arity(1)
    j = s.get(0, T)
    r = s.shape(0, j, cls, what)
    if not s.reverse:
        return J(cls(Succ(r.l), Succ(r.r)), T)
    if not (isinstance(r.l, Succ) and isinstance(r.r, Succ)):
        s._fail(0, "both sides must be successors", found=j)
    return J(cls(r.l.t, r.r.t), T)


PRIMITIVES["succEqIE"] = lambda s: _succ_pair(s, Eq, "an equality")
PRIMITIVES["succNeIE"] = lambda s: _succ_pair(s, Ne, "an inequality")


@primitive("succNeZeroI")
def _succ_ne_zero(s: _Step):
    s.arity(1)
    return J(Ne(Succ(s.get(0, NAT).subject), ZERO), T)


@primitive("natTI")
def _nat_ti(s: _Step):
    s.arity(1)
    return J(Has(s.get(0, OBJ).subject, NAT), BOOL)


@primitive("natTE")
def _nat_te(s: _Step):
    s.arity(1)
    return J(s.get(0, NAT).subject, OBJ)


@primitive("ind")
def _ind(s: _Step):
    s.arity(3)
    p = s.template("p")
    (x,) = s.fresh(1)
    s.expect(0, J(p(ZERO), T))
    a = _subject(s, "a", 2, NAT)
    s.hypo(1, [J(Var(x), NAT), J(p(Var(x)), T)], [x], want=J(p(Succ(Var(x))), T))
    return J(p(a), T)


def _case_term(s: _Step) -> Case:
    k = s.need("case")
    if not isinstance(k, Case):
        raise PremiseShapeMismatch("(case ...) must be a case term", rule=s.name)
    return k


@primitive("case0IE")
def _case0_ie(s: _Step):
    s.arity(2)
    k = _case_term(s)
    j = s.get(0, T)
    e = s.shape(0, j, Eq, "an equality `a = 0`")
    if not (isinstance(e.r, Zero) and alpha_eq(e.l, k.scrutinee)):
        s._fail(0, "premise must equate the case scrutinee with 0", expected=J(Eq(k.scrutinee, ZERO), T), found=j)
    p = s.template("p", default_identity=True)
    return _rewrite(s, p, k.zero, k)


@primitive("caseSIE")
def _case_s_ie(s: _Step):
    s.arity(2)
    k = _case_term(s)
    j = s.get(0, T)
    e = s.shape(0, j, Eq, "an equality `a = S(p)`")
    if not (isinstance(e.r, Succ) and alpha_eq(e.l, k.scrutinee)):
        s._fail(0, "premise must equate the case scrutinee with a successor", found=j)
    p = s.template("p", default_identity=True)
    return _rewrite(s, p, subst(k.succ, k.pred, e.r.t), k)


def _rewrite(s: _Step, p: Template, plain: Term, wrapped: Term) -> Judgment:
    """Shared body of the conditional bidirectional rewriting rules."""
    if not s.reverse:
        s.expect(1, J(p(plain), T))
        return J(p(wrapped), T)
    s.expect(1, J(p(wrapped), T))
    return J(p(plain), T)


@primitive("caseE")
def _case_e(s: _Step):
    s.arity(3)
    j = s.get(0, T)
    e = s.shape(0, j, Eq, "an equality `b = case a of {...}`")
    if not isinstance(e.r, Case):
        s._fail(0, "right-hand side must be a case term", found=j)
    b, k = e.l, e.r
    (v,) = s.fresh(1)
    zero_hyps = [J(Eq(k.scrutinee, ZERO), T), J(Eq(b, k.zero), T)]
    succ_hyps = [J(Eq(k.scrutinee, Succ(Var(v))), T), J(Eq(b, subst(k.succ, k.pred, Var(v))), T)]
    out = _case_split(s, 1, zero_hyps, succ_hyps, (), (v,))
    return s.no_escape(out, [v])


# ---------------------------------------------------------------------------
# conditionals


def _if_rule(s: _Step, kind: JudgKind):
    s.arity(2)
    ite = s.need("ite")
    if not isinstance(ite, If):
        raise PremiseShapeMismatch("(ite ...) must be an if/then/else term", rule=s.name)
    s.expect(0, J(ite.cond, kind))
    p = s.template("p", default_identity=True)
    return _rewrite(s, p, ite.then if kind is T else ite.else_, ite)


PRIMITIVES["iftrueIE"] = lambda s: _if_rule(s, T)
PRIMITIVES["iffalseIE"] = lambda s: _if_rule(s, F)


# ---------------------------------------------------------------------------
# first-class booleans and the DT discipline


@primitive("boolEqI")
def _bool_eq_i(s: _Step):
    s.arity(1)
    i = s.shape(0, s.get(0, T), Iff, "a biconditional")
    return J(Eq(i.l, i.r), T)


@primitive("boolTI")
def _bool_ti(s: _Step):
    s.arity(1)
    return J(Has(s.get(0, OBJ).subject, BOOL), BOOL)


@primitive("boolTE")
def _bool_te(s: _Step):
    s.arity(1)
    return J(s.get(0, BOOL).subject, OBJ)


def _disjoint(s: _Step, have: JudgKind, other: JudgKind):
    s.arity(1)
    j = s.get(0, T)
    h = s.shape(0, j, Has, "a type test")
    if h.kind is not have:
        s._fail(0, f"premise must be `(a : {have}) : true`", found=j)
    return J(Has(h.t, other), F)


PRIMITIVES["dtBoolNat1"] = lambda s: _disjoint(s, BOOL, NAT)
PRIMITIVES["dtBoolNat2"] = lambda s: _disjoint(s, NAT, BOOL)

RULE_NAMES = frozenset(PRIMITIVES)


# ---------------------------------------------------------------------------
# whole files


@dataclass(frozen=True)
class DefItem:
    definition: Definition
    span: Span | None = None

    @property
    def name(self) -> str:
        return self.definition.symbol


@dataclass(frozen=True)
class ProofItem:
    name: str
    proof: ProofNode
    hyps: tuple[tuple[str, Judgment], ...] = ()
    variables: frozenset[str] = frozenset()
    goal: Judgment | None = None
    span: Span | None = None


@dataclass(frozen=True)
class Pragma:
    key: str
    value: str
    span: Span | None = None


@dataclass
class ItemResult:
    name: str
    kind: str  # "def" | "proof" | "pragma"
    ok: bool
    judgment: Judgment | None = None
    error: Exception | None = None
    span: Span | None = None
    depends: tuple[str, ...] = ()

    @property
    def error_code(self) -> str | None:
        if self.error is None:
            return None
        return getattr(self.error, "code", type(self.error).__name__)

    @property
    def error_span(self) -> Span | None:
        return getattr(self.error, "span", None) or self.span


@dataclass
class FileReport:
    items: list[ItemResult] = field(default_factory=list)
    env: DefEnv = field(default_factory=DefEnv)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.items)

    def __getitem__(self, name: str) -> ItemResult:
        for r in self.items:
            if r.name == name:
                return r
        raise KeyError(name)

    def dependency_graph(self) -> dict[str, tuple[str, ...]]:
        return {r.name: r.depends for r in self.items if r.kind == "proof"}




def check_file(
    env0: DefEnv,
    cfg: CheckConfig | None,
    items: Iterable[DefItem | ProofItem | Pragma],
    *,
    derived: Mapping[str, Expander] | None = None,
) -> FileReport:
    """Check every item of a file in order.

    Definitions accumulate into the environment; a proof is checked against
    the definitions that precede it.  Proofs that check become lemmas for
    later proofs.  A ``discipline`` pragma switches the discipline for the
    items after it.
    """
    if derived is None:
        from .derived import EXPANDERS

        derived = EXPANDERS
    cfg = cfg or CheckConfig()
    items = list(items)

    # arity consistency needs the whole file, since definitions may refer forward
    full = env0
    for item in items:
        if isinstance(item, DefItem):
            try:
                full = _defenv.add_def(full, item.definition)
            except _defenv.DefinitionError:
                pass
    bad_arity: dict[str, str] = {}
    for d in full:
        try:
            _defenv.check_arities(full, d.body, where=d.symbol)
        except _defenv.ArityMismatch as e:
            bad_arity[d.symbol] = str(e)

    env = env0
    lemmas: dict[str, Lemma] = {}
    report = FileReport()
    for item in items:
        if isinstance(item, Pragma):
            ok = True
            err: Exception | None = None
            if item.key == "discipline":
                try:
                    cfg = CheckConfig(Discipline(item.value.lower()))
                except ValueError:
                    ok, err = False, CheckError(f"unknown discipline {item.value!r}", span=item.span)
            report.items.append(ItemResult(f"pragma {item.key}", "pragma", ok, error=err, span=item.span))
        elif isinstance(item, DefItem):
            report.items.append(_def_result(item, env, bad_arity))
            try:
                env = _defenv.add_def(env, item.definition)
            except _defenv.DefinitionError:
                pass
        else:
            result = _check_proof_item(item, env, cfg, lemmas, derived)
            report.items.append(result)
            if result.ok and item.name not in lemmas:
                assert result.judgment is not None
                hyps = tuple(j for _, j in item.hyps)
                variables = set(item.variables) | result.judgment.free_vars()
                for h in hyps:
                    variables |= h.free_vars()
                lemmas[item.name] = Lemma(item.name, result.judgment, hyps, frozenset(variables))
    report.env = env
    return report


def _def_result(item: DefItem, env: DefEnv, bad_arity: Mapping[str, str]) -> ItemResult:
    err: CheckError | None = None
    try:
        _defenv.add_def(env, item.definition)
    except _defenv.RedefinedSymbol as e:
        err = RedefinedSymbol(str(e))
    except _defenv.DefinitionError as e:
        err = DefinitionRejected(e)
    if err is None and item.name in bad_arity:
        err = ArityMismatch(bad_arity[item.name])
    if err is not None:
        err.span = item.span
        return ItemResult(item.name, "def", False, error=err, span=item.span)
    return ItemResult(item.name, "def", True, span=item.span)


def _check_proof_item(
    item: ProofItem,
    env: DefEnv,
    cfg: CheckConfig,
    lemmas: Mapping[str, Lemma],
    derived: Mapping[str, Expander],
) -> ItemResult:
    checker = Checker(env, cfg, lemmas, derived)
    try:
        if item.name in lemmas:
            raise CheckError(f"a proof named {item.name!r} already exists", span=item.span)
        labels = [label for label, _ in item.hyps]
        if len(set(labels)) != len(labels):
            raise CheckError("duplicate assumption label", span=item.span)
        ctx = Context(tuple(item.hyps), frozenset(), frozenset(item.variables))
        j = checker.check(ctx, item.proof)
        if item.goal is not None and not j.alpha_eq(item.goal):
            raise GoalMismatch(
                "proof does not establish the stated goal", expected=item.goal, found=j, span=item.span
            )
    except CheckError as e:
        if e.span is None:
            e.span = item.span
        return ItemResult(item.name, "proof", False, error=e, span=item.span,
                          depends=tuple(checker.dependencies))
    return ItemResult(item.name, "proof", True, judgment=j, span=item.span,
                      depends=tuple(checker.dependencies))
