"""Judgments ``t : kind``, hypothesis contexts, and typed-quantifier sugar."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .term import Exists, Forall, Has, Imp, JudgKind, Term, Var, alpha_eq, free_vars, subst_many

__all__ = [
    "JudgKind",
    "Judgment",
    "Context",
    "Sequent",
    "AnnotatedQuantifier",
    "desugar_typed_quantifier",
]

TYPING_KINDS = frozenset({JudgKind.BOOL, JudgKind.OBJ, JudgKind.NAT})


@dataclass(frozen=True)
class Judgment:
    subject: Term
    kind: JudgKind

    def __str__(self) -> str:
        from .parser import print_judgment

        return print_judgment(self)

    def alpha_eq(self, other: "Judgment") -> bool:
        return self.kind == other.kind and alpha_eq(self.subject, other.subject)

    def free_vars(self) -> frozenset[str]:
        return free_vars(self.subject)

    def subst(self, sigma) -> "Judgment":
        return Judgment(subst_many(self.subject, sigma), self.kind)

    @property
    def is_typing(self) -> bool:
        return self.kind in TYPING_KINDS


@dataclass(frozen=True)
class Context:
    """Hypotheses in scope plus the variables they may mention.

    ``variables`` holds declared (schematic) variables, ``ephemerals`` the
    variables introduced by enclosing hypothetical premises.  Later bindings
    of a label shadow earlier ones.
    """

    hyps: tuple[tuple[str, Judgment], ...] = ()
    ephemerals: frozenset[str] = frozenset()
    variables: frozenset[str] = frozenset()

    def lookup(self, label: str) -> Judgment | None:
        for name, j in reversed(self.hyps):
            if name == label:
                return j
        return None

    def extend(self, hyps: Iterable[tuple[str, Judgment]] = (), ephemerals: Iterable[str] = ()) -> "Context":
        return Context(self.hyps + tuple(hyps), self.ephemerals | set(ephemerals), self.variables)

    def names(self) -> frozenset[str]:
        """Every variable the context mentions or reserves."""
        out = set(self.ephemerals) | self.variables
        for _, j in self.hyps:
            out |= free_vars(j.subject)
        return frozenset(out)

    def contains(self, j: Judgment) -> bool:
        return any(h.alpha_eq(j) for _, h in self.hyps)

    def labels(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.hyps)


@dataclass(frozen=True)
class Sequent:
    hyps: tuple[tuple[str, Judgment], ...]
    ephemerals: frozenset[str]
    goal: Judgment

    def __post_init__(self):
        labels = [name for name, _ in self.hyps]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate hypothesis label in {labels}")

    @property
    def context(self) -> Context:
        return Context(self.hyps, self.ephemerals)


@dataclass(frozen=True)
class AnnotatedQuantifier:
    """Surface form ``forall x:kind . body`` / ``exists x:kind . body``."""

    quantifier: type  # Forall or Exists
    var: str
    kind: JudgKind
    body: Term = field(repr=True)


def desugar_typed_quantifier(q: Term | AnnotatedQuantifier) -> Term:
    """``Q x:k. p``  becomes  ``Q x. (x : k) -> p`` for both quantifiers."""
    if isinstance(q, AnnotatedQuantifier):
        if q.quantifier not in (Forall, Exists):
            raise TypeError(f"not a quantifier: {q.quantifier!r}")
        return q.quantifier(q.var, Imp(Has(Var(q.var), q.kind), q.body))
    return q
