"""Term syntax for grounded deduction.

There is a single syntactic sort: propositions, numbers and judgments
embedded as terms are all just ``Term`` values.  Terms are immutable and
hashable; structural equality (``==``) is exact, ``alpha_eq`` ignores the
names of bound variables.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping


class JudgKind(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    BOOL = "bool"
    OBJ = "obj"
    NAT = "nat"

    def __str__(self) -> str:
        return self.value


class Term:
    """Base class of all term nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .parser import print_term

        return print_term(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class LitTrue(Term):
    pass


@dataclass(frozen=True, slots=True)
class LitFalse(Term):
    pass


@dataclass(frozen=True, slots=True)
class Not(Term):
    t: Term


@dataclass(frozen=True, slots=True)
class And(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Or(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Imp(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Iff(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Forall(Term):
    x: str
    body: Term


@dataclass(frozen=True, slots=True)
class Exists(Term):
    x: str
    body: Term


@dataclass(frozen=True, slots=True)
class Eq(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Ne(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Succ(Term):
    t: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    symbol: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class If(Term):
    cond: Term
    then: Term
    else_: Term


@dataclass(frozen=True, slots=True)
class Case(Term):
    scrutinee: Term
    zero: Term
    pred: str
    succ: Term


@dataclass(frozen=True, slots=True)
class Has(Term):
    t: Term
    kind: JudgKind


TRUE = LitTrue()
FALSE = LitFalse()
ZERO = Zero()

BINARY = (And, Or, Imp, Iff, Eq, Ne)
BINDERS = (Forall, Exists)


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    n = 0
    while isinstance(t, Succ):
        t = t.t
        n += 1
    return n if isinstance(t, Zero) else None


@dataclass(frozen=True, slots=True)
class Template:
    """A term with a distinguished hole variable, written ``p[hole]``."""

    hole: str
    body: Term

    def __call__(self, filler: Term) -> Term:
        return instantiate(self, filler)


def instantiate(tpl: Template, filler: Term) -> Term:
    return subst(tpl.body, tpl.hole, filler)


# ---------------------------------------------------------------------------
# free variables


def free_vars(t: Term) -> frozenset[str]:
    while isinstance(t, Succ):  # numerals nest thousands deep; peel them without recursing
        t = t.t
    match t:
        case Var(name):
            return frozenset((name,))
        case LitTrue() | LitFalse() | Zero():
            return frozenset()
        case Not(a) | Succ(a) | Has(a, _):
            return free_vars(a)
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) | Eq(a, b) | Ne(a, b):
            return free_vars(a) | free_vars(b)
        case Forall(x, body) | Exists(x, body):
            return free_vars(body) - {x}
        case App(_, args):
            out: frozenset[str] = frozenset()
            for a in args:
                out |= free_vars(a)
            return out
        case If(c, a, b):
            return free_vars(c) | free_vars(a) | free_vars(b)
        case Case(s, z, p, succ):
            return free_vars(s) | free_vars(z) | (free_vars(succ) - {p})
    raise TypeError(f"not a term: {t!r}")


def all_names(t: Term) -> frozenset[str]:
    """Every variable name occurring in ``t``, free or binding."""
    match t:
        case Var(name):
            return frozenset((name,))
        case Forall(x, body) | Exists(x, body):
            return all_names(body) | {x}
        case Case(s, z, p, succ):
            return all_names(s) | all_names(z) | all_names(succ) | {p}
    out: frozenset[str] = frozenset()
    for c in children(t):
        out |= all_names(c)
    return out


def symbols(t: Term) -> set[tuple[str, int]]:
    """(symbol, arity) pairs of every application inside ``t``."""
    out: set[tuple[str, int]] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            out.add((u.symbol, len(u.args)))
        stack.extend(children(u))
    return out


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Not(a) | Succ(a) | Has(a, _):
            return (a,)
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) | Eq(a, b) | Ne(a, b):
            return (a, b)
        case Forall(_, body) | Exists(_, body):
            return (body,)
        case App(_, args):
            return args
        case If(c, a, b):
            return (c, a, b)
        case Case(s, z, _, succ):
            return (s, z, succ)
    return ()


# ---------------------------------------------------------------------------
# substitution

_SUFFIX = re.compile(r"\d+$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Smallest ``base<n>`` (n >= 1, trailing digits of base dropped) not in avoid."""
    avoid = set(avoid)
    stem = _SUFFIX.sub("", base) or base
    n = 1
    while f"{stem}{n}" in avoid:
        n += 1
    return f"{stem}{n}"


def subst(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution of ``s`` for free ``x`` in ``t``."""
    return subst_many(t, {x: s})


def subst_many(t: Term, sigma: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution."""
    sigma = {k: v for k, v in sigma.items() if not (isinstance(v, Var) and v.name == k)}
    if not sigma:
        return t
    fv_range: frozenset[str] = frozenset()
    for v in sigma.values():
        fv_range |= free_vars(v)
    return _subst(t, dict(sigma), fv_range)


def _bind(x: str, body_parts: tuple[Term, ...], sigma: dict[str, Term], fv_range: frozenset[str]):
    """Prepare substitution under a binder for ``x``; returns (new name, inner sigma)."""
    inner = {k: v for k, v in sigma.items() if k != x}
    live = {k: v for k, v in inner.items() if any(k in free_vars(p) for p in body_parts)}
    if not live:
        return x, None
    live_range: frozenset[str] = frozenset()
    for v in live.values():
        live_range |= free_vars(v)
    if x not in live_range:
        return x, live
    avoid = set(live_range)
    for p in body_parts:
        avoid |= free_vars(p)
    avoid |= live.keys()
    y = fresh_name(x, avoid)
    live = dict(live)
    live[x] = Var(y)
    return y, live


def _subst(t: Term, sigma: dict[str, Term], fv_range: frozenset[str]) -> Term:
    match t:
        case Var(name):
            return sigma.get(name, t)
        case LitTrue() | LitFalse() | Zero():
            return t
        case Not(a):
            return Not(_subst(a, sigma, fv_range))
        case Succ():
            n = 0
            while isinstance(t, Succ):
                t, n = t.t, n + 1
            out = _subst(t, sigma, fv_range)
            for _ in range(n):
                out = Succ(out)
            return out
        case Has(a, k):
            return Has(_subst(a, sigma, fv_range), k)
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) | Eq(a, b) | Ne(a, b):
            return type(t)(_subst(a, sigma, fv_range), _subst(b, sigma, fv_range))
        case Forall(x, body) | Exists(x, body):
            y, inner = _bind(x, (body,), sigma, fv_range)
            if inner is None:
                return t
            return type(t)(y, _subst(body, inner, fv_range))
        case App(f, args):
            return App(f, tuple(_subst(a, sigma, fv_range) for a in args))
        case If(c, a, b):
            return If(_subst(c, sigma, fv_range), _subst(a, sigma, fv_range), _subst(b, sigma, fv_range))
        case Case(s, z, p, succ):
            s2 = _subst(s, sigma, fv_range)
            z2 = _subst(z, sigma, fv_range)
            q, inner = _bind(p, (succ,), sigma, fv_range)
            succ2 = succ if inner is None else _subst(succ, inner, fv_range)
            return Case(s2, z2, q, succ2)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# alpha equivalence


def alpha_eq(a: Term, b: Term) -> bool:
    return _alpha(a, b, {}, {}, 0)


def _alpha(a: Term, b: Term, ea: dict[str, int], eb: dict[str, int], depth: int) -> bool:
    while isinstance(a, Succ) and isinstance(b, Succ):
        a, b = a.t, b.t
    if type(a) is not type(b):
        return False
    match a:
        case Var(x):
            ia, ib = ea.get(x), eb.get(b.name)
            if ia is None and ib is None:
                return x == b.name
            return ia == ib
        case LitTrue() | LitFalse() | Zero():
            return True
        case Has(t, k):
            return k == b.kind and _alpha(t, b.t, ea, eb, depth)
        case Forall(x, body) | Exists(x, body):
            return _alpha(body, b.body, {**ea, x: depth}, {**eb, b.x: depth}, depth + 1)
        case App(f, args):
            return (
                f == b.symbol
                and len(args) == len(b.args)
                and all(_alpha(p, q, ea, eb, depth) for p, q in zip(args, b.args))
            )
        case Case(s, z, p, succ):
            return (
                _alpha(s, b.scrutinee, ea, eb, depth)
                and _alpha(z, b.zero, ea, eb, depth)
                and _alpha(succ, b.succ, {**ea, p: depth}, {**eb, b.pred: depth}, depth + 1)
            )
    return all(_alpha(p, q, ea, eb, depth) for p, q in zip(children(a), children(b)))
