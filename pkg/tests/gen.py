"""Random terms and definition environments for property tests.

``random_term`` draws from the whole term language; ``random_env`` draws
small sets of possibly recursive, possibly ungrounded definitions.  The
hypothesis strategies at the bottom wrap the same generators.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from gdc.defenv import DefEnv, Definition, add_def
from gdc.term import (
    App,
    And,
    Case,
    Eq,
    Exists,
    FALSE,
    Forall,
    Has,
    If,
    Iff,
    Imp,
    JudgKind,
    Ne,
    Not,
    Or,
    Succ,
    TRUE,
    Term,
    Var,
    ZERO,
    numeral,
)

SYMBOLS = ("f", "g", "h", "c", "d", "e")
VARS = ("x", "y", "z", "w")
KINDS = tuple(JudgKind)


def random_term(rng: random.Random, depth: int, bound: tuple[str, ...] = (),
                symbols: dict[str, int] | None = None, allow_free: bool = False) -> Term:
    """A term whose free variables are among ``bound`` (or anything, with ``allow_free``)."""
    symbols = {"c": 0, "f": 1, "g": 2} if symbols is None else symbols
    leaves = ["true", "false", "zero", "num"]
    if bound or allow_free:
        leaves += ["var", "var"]
    if symbols:
        leaves.append("app0")
    if depth <= 0:
        kind = rng.choice(leaves)
    else:
        kind = rng.choice(leaves + ["not", "and", "or", "imp", "iff", "eq", "ne", "succ", "app", "app",
                                     "if", "case", "has", "forall", "exists"])

    def sub(extra: tuple[str, ...] = ()) -> Term:
        return random_term(rng, depth - 1, bound + extra, symbols, allow_free)

    match kind:
        case "true":
            return TRUE
        case "false":
            return FALSE
        case "zero":
            return ZERO
        case "num":
            return numeral(rng.randint(1, 3))
        case "var":
            pool = bound if bound and not allow_free else bound + VARS
            return Var(rng.choice(pool))
        case "app0" | "app":
            name = rng.choice(sorted(symbols))
            return App(name, tuple(sub() for _ in range(symbols[name])))
        case "not":
            return Not(sub())
        case "succ":
            return Succ(sub())
        case "has":
            return Has(sub(), rng.choice(KINDS))
        case "if":
            return If(sub(), sub(), sub())
        case "case":
            p = rng.choice(VARS)
            return Case(sub(), sub(), p, sub((p,)))
        case "forall" | "exists":
            x = rng.choice(VARS)
            return (Forall if kind == "forall" else Exists)(x, sub((x,)))
    cls = {"and": And, "or": Or, "imp": Imp, "iff": Iff, "eq": Eq, "ne": Ne}[kind]
    return cls(sub(), sub())


def random_env(rng: random.Random, depth: int = 3) -> tuple[DefEnv, dict[str, int]]:
    """Up to four definitions that may call each other (and themselves) freely."""
    names = rng.sample(SYMBOLS, rng.randint(1, 4))
    arities = {n: rng.randint(0, 2) for n in names}
    env = DefEnv()
    for n in names:
        params = VARS[: arities[n]]
        body = random_term(rng, rng.randint(0, depth), params, arities)
        env = add_def(env, Definition(n, params, body))
    return env, arities


# ---------------------------------------------------------------------------
# hypothesis wrappers


@st.composite
def terms(draw, max_depth: int = 4, allow_free: bool = True) -> Term:
    seed = draw(st.integers(0, 2**32 - 1))
    depth = draw(st.integers(0, max_depth))
    return random_term(random.Random(seed), depth, allow_free=allow_free)


@st.composite
def closed_instances(draw, max_depth: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    env, arities = random_env(rng)
    return env, random_term(rng, rng.randint(0, max_depth), (), arities)
