"""Fuel-bounded strong-Kleene evaluation.

``evaluate`` computes the value a closed term has under the definitions,
or ``UNKNOWN`` when it finds none within the budget.  Unknown is an honest
answer: the evaluator never claims a value the term lacks, and more fuel
can only turn Unknown into a value, never change a value.

Fuel counts definition unfoldings.  Applications are evaluated call by
value and memoised per evaluation on their (determinate) arguments; memo
hits are free.  The evaluator runs on an explicit stack, so deep
recursions such as Ackermann's function do not hit Python's recursion
limit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import permutations
from typing import Generator, Mapping

from .defenv import DefEnv, Definition, UnknownSymbol
from .kernel import Discipline
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
    Term,
    Var,
    Zero,
    alpha_eq,
    as_numeral,
    free_vars,
    subst_many,
    symbols,
)


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Nat:
    n: int

    def __str__(self) -> str:
        return f"nat {self.n}"


Value = Truth | Nat
TRUE, FALSE, UNKNOWN = Truth.TRUE, Truth.FALSE, Truth.UNKNOWN


def truth(b: bool) -> Truth:
    return TRUE if b else FALSE


def is_determinate(v: Value) -> bool:
    return v is not UNKNOWN


class OpenTerm(Exception):
    code = "OpenTerm"


class NotConstant(Exception):
    code = "NotConstant"


@dataclass(frozen=True)
class EvalConfig:
    fuel: int = 100_000
    quant_bound: int = 64
    discipline: Discipline = Discipline.AT
    jets: bool = True

    def __post_init__(self):
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if self.quant_bound < 0:
            raise ValueError("quant_bound must be non-negative")


# ---------------------------------------------------------------------------
# Kleene connectives (values that are not truth values count as unknown)


def k_not(a: Value) -> Truth:
    if a is TRUE:
        return FALSE
    if a is FALSE:
        return TRUE
    return UNKNOWN


def k_and(a: Value, b: Value) -> Truth:
    if a is FALSE or b is FALSE:
        return FALSE
    if a is TRUE and b is TRUE:
        return TRUE
    return UNKNOWN


def k_or(a: Value, b: Value) -> Truth:
    if a is TRUE or b is TRUE:
        return TRUE
    if a is FALSE and b is FALSE:
        return FALSE
    return UNKNOWN


def k_imp(a: Value, b: Value) -> Truth:
    return k_or(k_not(a), b)


def k_iff(a: Value, b: Value) -> Truth:
    return k_and(k_imp(a, b), k_imp(b, a))


# ---------------------------------------------------------------------------
# discipline-dependent comparisons


def _code(v: Value) -> Value:
    """Coded-types view: booleans are the naturals 1 and 0."""
    if v is TRUE:
        return Nat(1)
    if v is FALSE:
        return Nat(0)
    return v


def values_equal(a: Value, b: Value, discipline: Discipline) -> Truth:
    if a is UNKNOWN or b is UNKNOWN:
        return UNKNOWN
    if isinstance(a, Nat) == isinstance(b, Nat):
        return truth(a == b)
    match discipline:
        case Discipline.CT:
            return truth(_code(a) == _code(b))
        case Discipline.DT:
            return FALSE
    return UNKNOWN


def has_kind(v: Value, kind: JudgKind, discipline: Discipline) -> Truth:
    if v is UNKNOWN:
        return UNKNOWN
    if kind is JudgKind.OBJ:
        return TRUE
    if kind is JudgKind.NAT:
        if isinstance(v, Nat):
            return TRUE
        return {Discipline.AT: UNKNOWN, Discipline.CT: TRUE, Discipline.DT: FALSE}[discipline]
    # bool, true, false: membership among the truth values
    if isinstance(v, Nat):
        if discipline is Discipline.AT:
            return UNKNOWN
        if discipline is Discipline.DT or v.n > 1:
            return FALSE
        v = truth(v.n == 1)
    if kind is JudgKind.BOOL:
        return TRUE
    return truth(v is (TRUE if kind is JudgKind.TRUE else FALSE))


# ---------------------------------------------------------------------------
# native acceleration of canonical arithmetic definitions

_JET_SHAPES: dict[str, tuple[tuple[str, ...], str, tuple[str, ...]]] = {
    # kind: (params, body with SELF/PLUS/TIMES placeholders, placeholder deps)
    "plus": (("a", "b"), "case a of { 0 => b | S(ap) => S(SELF(ap, b)) }", ()),
    "times": (("a", "b"), "case a of { 0 => 0 | S(ap) => PLUS(SELF(ap, b), b) }", ("PLUS",)),
    "exp": (("a", "b"), "case b of { 0 => 1 | S(bp) => TIMES(a, SELF(a, bp)) }", ("TIMES",)),
}
_JET_OPS = {
    "plus": lambda a, b: a + b,
    "times": lambda a, b: a * b,
    "exp": lambda a, b: a**b,
}
_DEP_KIND = {"PLUS": "plus", "TIMES": "times"}
_jet_bodies: dict[str, Term] = {}


def _jet_body(kind: str) -> Term:
    if kind not in _jet_bodies:
        from .parser import parse_term

        params, text, _ = _JET_SHAPES[kind]
        _jet_bodies[kind] = parse_term(text, params)
    return _jet_bodies[kind]


def _rename_symbols(t: Term, mapping: Mapping[str, str]) -> Term:
    match t:
        case App(f, args):
            return App(mapping.get(f, f), tuple(_rename_symbols(a, mapping) for a in args))
        case Forall(x, b):
            return Forall(x, _rename_symbols(b, mapping))
        case Exists(x, b):
            return Exists(x, _rename_symbols(b, mapping))
        case Case(s, z, p, succ):
            return Case(_rename_symbols(s, mapping), _rename_symbols(z, mapping), p, _rename_symbols(succ, mapping))
        case Has(a, k):
            return Has(_rename_symbols(a, mapping), k)
        case Not(a) | Succ(a):
            return type(t)(_rename_symbols(a, mapping))
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) | Eq(a, b) | Ne(a, b):
            return type(t)(_rename_symbols(a, mapping), _rename_symbols(b, mapping))
        case If(c, a, b):
            return If(_rename_symbols(c, mapping), _rename_symbols(a, mapping), _rename_symbols(b, mapping))
    return t


def find_jets(env: DefEnv) -> dict[str, str]:
    """Defined symbols whose definitions are exactly canonical plus/times/exp, by kind."""
    jets: dict[str, str] = {}
    for kind in ("plus", "times", "exp"):
        params, _, deps = _JET_SHAPES[kind]
        pattern = _jet_body(kind)
        for d in env:
            if d.symbol in jets or d.arity != len(params):
                continue
            body = subst_many(d.body, {p: Var(q) for p, q in zip(d.params, params)})
            used = sorted(s for s, _ in symbols(body) if s != d.symbol)
            candidates = [u for u in used if jets.get(u) in {_DEP_KIND[x] for x in deps}]
            for combo in permutations(candidates, len(deps)):
                mapping = {"SELF": d.symbol, **dict(zip(deps, combo))}
                if alpha_eq(_rename_symbols(pattern, mapping), body):
                    jets[d.symbol] = kind
                    break
    return jets


# ---------------------------------------------------------------------------
# the evaluator

Scope = Mapping[str, Value]
_Gen = Generator[tuple[Term, Scope], Value, Value]


class _Run:
    def __init__(self, env: DefEnv, cfg: EvalConfig):
        self.env = env
        self.cfg = cfg
        self.fuel = cfg.fuel
        self.memo: dict[tuple, Value] = {}
        self.jets = find_jets(env) if cfg.jets else {}
        self.unfoldings = 0

    def run(self, t: Term, scope: Scope) -> Value:
        quick = self._quick(t, scope)
        if quick is not None:
            return quick
        stack: list[_Gen] = [self._step(t, scope)]
        val: Value | None = None
        while stack:
            try:
                sub, sc = stack[-1].send(val)
            except StopIteration as stop:
                stack.pop()
                val = stop.value
                continue
            quick = self._quick(sub, sc)
            if quick is not None:
                val = quick
            else:
                stack.append(self._step(sub, sc))
                val = None
        assert val is not None
        return val

    def _quick(self, t: Term, scope: Scope) -> Value | None:
        match t:
            case Var(name):
                return scope[name]
            case LitTrue():
                return TRUE
            case LitFalse():
                return FALSE
            case Zero():
                return Nat(0)
            case Succ():
                n = as_numeral(t)
                return None if n is None else Nat(n)
        return None

    def _step(self, t: Term, scope: Scope) -> _Gen:
        disc = self.cfg.discipline
        match t:
            case Succ(a):
                v = yield a, scope
                return Nat(v.n + 1) if isinstance(v, Nat) else UNKNOWN
            case Not(a):
                return k_not((yield a, scope))
            case And(a, b):
                left = yield a, scope
                if left is FALSE:
                    return FALSE
                return k_and(left, (yield b, scope))
            case Or(a, b):
                left = yield a, scope
                if left is TRUE:
                    return TRUE
                return k_or(left, (yield b, scope))
            case Imp(a, b):
                left = yield a, scope
                if left is FALSE:
                    return TRUE
                return k_imp(left, (yield b, scope))
            case Iff(a, b):
                left = yield a, scope
                return k_iff(left, (yield b, scope))
            case Eq(a, b):
                left = yield a, scope
                return values_equal(left, (yield b, scope), disc)
            case Ne(a, b):
                left = yield a, scope
                return k_not(values_equal(left, (yield b, scope), disc))
            case Has(a, kind):
                return has_kind((yield a, scope), kind, disc)
            case If(c, a, b):
                v = yield c, scope
                if v is TRUE:
                    return (yield a, scope)
                if v is FALSE:
                    return (yield b, scope)
                return UNKNOWN
            case Case(s, z, p, succ):
                v = yield s, scope
                if not isinstance(v, Nat):
                    return UNKNOWN
                if v.n == 0:
                    return (yield z, scope)
                return (yield succ, {**scope, p: Nat(v.n - 1)})
            case Forall(x, body):
                if x not in free_vars(body):
                    return (yield body, scope)
                for cand in self._candidates():
                    if (yield body, {**scope, x: cand}) is FALSE:
                        return FALSE
                return UNKNOWN
            case Exists(x, body):
                if x not in free_vars(body):
                    return (yield body, scope)
                for cand in self._candidates():
                    if (yield body, {**scope, x: cand}) is TRUE:
                        return TRUE
                return UNKNOWN
            case App(f, args):
                d = self.env.get(f)
                if d is None or d.arity != len(args):
                    return UNKNOWN
                vals = []
                for a in args:
                    vals.append((yield a, scope))
                key = (f, *vals) if all(v is not UNKNOWN for v in vals) else None
                if key is not None and key in self.memo:
                    return self.memo[key]
                if self.fuel <= 0:
                    return UNKNOWN
                self.fuel -= 1
                self.unfoldings += 1
                kind = self.jets.get(f)
                if kind is not None and all(isinstance(v, Nat) for v in vals):
                    result: Value = Nat(_JET_OPS[kind](*(v.n for v in vals)))
                else:
                    result = yield d.body, dict(zip(d.params, vals))
                if key is not None and result is not UNKNOWN:
                    self.memo[key] = result
                return result
        raise TypeError(f"cannot evaluate {t!r}")

    def _candidates(self):
        yield TRUE
        yield FALSE
        for n in range(self.cfg.quant_bound + 1):
            yield Nat(n)


def evaluate(env: DefEnv, cfg: EvalConfig | None, t: Term, bindings: Scope | None = None) -> Value:
    """Value of the closed term ``t`` (free variables may be given ``bindings``)."""
    cfg = cfg or EvalConfig()
    bindings = dict(bindings or {})
    loose = free_vars(t) - bindings.keys()
    if loose:
        raise OpenTerm(f"term has free variable(s) {', '.join(sorted(loose))}")
    return _Run(env, cfg).run(t, bindings)


# the name used throughout the documentation
eval_term = evaluate


# ---------------------------------------------------------------------------
# groundedness classification


@dataclass(frozen=True)
class GroundedTrue:
    def __str__(self) -> str:
        return "grounded true"


@dataclass(frozen=True)
class GroundedFalse:
    def __str__(self) -> str:
        return "grounded false"


@dataclass(frozen=True)
class GroundedValue:
    """A constant that denotes a natural number rather than a truth value."""

    value: Nat

    def __str__(self) -> str:
        return f"grounded {self.value}"


@dataclass(frozen=True)
class Ungrounded:
    """No value found within ``fuel`` unfoldings; an approximation."""

    fuel: int

    def __str__(self) -> str:
        return f"ungrounded (fuel={self.fuel})"


Classification = GroundedTrue | GroundedFalse | GroundedValue | Ungrounded


def classify(env: DefEnv, cfg: EvalConfig | None, symbol: str) -> Classification:
    cfg = cfg or EvalConfig()
    d = env.get(symbol)
    if d is None:
        raise UnknownSymbol(f"{symbol} is not defined", symbol)
    if d.arity:
        raise NotConstant(f"{symbol} takes {d.arity} argument(s); only constants can be classified")
    v = evaluate(env, cfg, App(symbol, ()))
    match v:
        case Truth.TRUE:
            return GroundedTrue()
        case Truth.FALSE:
            return GroundedFalse()
        case Nat():
            return GroundedValue(v)
    return Ungrounded(cfg.fuel)
