"""Proof trees as written in scripts and produced by derived-rule expansion."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .judgment import Judgment
from .term import Template, Term, Var, all_names, free_vars, fresh_name, subst_many

Span = tuple[int, int]  # (line, column), both 1-based


class ProofNode:
    __slots__ = ()
    span: Span | None


@dataclass(frozen=True)
class Inst:
    """Instantiation data attached to a rule application."""

    terms: Mapping[str, Term] = field(default_factory=dict)
    templates: Mapping[str, Template] = field(default_factory=dict)
    args: tuple[Term, ...] | None = None
    fresh: tuple[str, ...] = ()
    reverse: bool = False


@dataclass(frozen=True)
class Rule(ProofNode):
    name: str
    inst: Inst = field(default_factory=Inst)
    subs: tuple[ProofNode, ...] = ()
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Assume(ProofNode):
    """A hypothetical subproof; ``labels`` name the hypotheses the rule introduces.

    ``stated`` optionally repeats the hypothesis judgments for the reader;
    when present they must agree with what the rule introduces.
    """

    labels: tuple[str, ...]
    body: ProofNode
    stated: tuple[Judgment | None, ...] = ()
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Hyp(ProofNode):
    label: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class LemmaRef(ProofNode):
    name: str
    sigma: Mapping[str, Term] = field(default_factory=dict)
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class UseDef(ProofNode):
    symbol: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Hole(ProofNode):
    """An omitted premise (``_`` in scripts).  Never checks."""

    origin: str | None = None
    origin_index: int | None = None
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Placeholder(ProofNode):
    """Stands for an unspecified subproof of ``judgment`` from ``requires``.

    ``uses`` are proofs of the required judgments (normally hypothesis
    references), so cutting a hypothesis reaches into placeholders too.
    Only accepted when the checker runs in verification mode; used to
    instantiate derived rules schematically.
    """

    judgment: Judgment
    requires: tuple[Judgment, ...] = ()
    uses: tuple[ProofNode, ...] = ()
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Checked(ProofNode):
    """A premise the checker has already verified in the enclosing context.

    Built only by derived-rule expansion (never parsed), so that an
    expansion can reuse a premise without checking it twice.
    """

    judgment: Judgment
    span: Span | None = field(default=None, compare=False)


def unwrap(node: ProofNode) -> tuple[tuple[str, ...], ProofNode]:
    if isinstance(node, Assume):
        return node.labels, node.body
    return (), node


# ---------------------------------------------------------------------------
# structural operations used by derived rules and lemma instantiation


def proof_names(node: ProofNode) -> frozenset[str]:
    """All variable names mentioned anywhere in the proof."""
    out: set[str] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        match n:
            case Rule(_, inst, subs):
                out.update(inst.fresh)
                for t in inst.terms.values():
                    out |= all_names(t)
                for tpl in inst.templates.values():
                    out |= all_names(tpl.body) | {tpl.hole}
                for t in inst.args or ():
                    out |= all_names(t)
                stack.extend(subs)
            case Assume(_, body, stated):
                for j in stated:
                    if j is not None:
                        out |= all_names(j.subject)
                stack.append(body)
            case LemmaRef(_, sigma):
                for t in sigma.values():
                    out |= all_names(t)
            case Placeholder(j, reqs, uses):
                for r in (j, *reqs):
                    out |= all_names(r.subject)
                stack.extend(uses)
            case Checked(j):
                out |= all_names(j.subject)
    return frozenset(out)


def _subst_tpl(tpl: Template, sigma: dict[str, Term]) -> Template:
    inner = {k: v for k, v in sigma.items() if k != tpl.hole}
    if not inner:
        return tpl
    rng = frozenset().union(*(free_vars(v) for v in inner.values()))
    if tpl.hole in rng:
        h = fresh_name(tpl.hole, rng | all_names(tpl.body) | inner.keys())
        body = subst_many(tpl.body, {tpl.hole: Var(h)})
        return Template(h, subst_many(body, inner))
    return Template(tpl.hole, subst_many(tpl.body, inner))


def subst_proof(node: ProofNode, sigma: Mapping[str, Term]) -> ProofNode:
    """Substitute terms for free variables throughout a proof.

    Fresh (ephemeral) variables bound at a rule node scope over that node's
    instantiation and its subproofs; they are renamed when they would
    capture a variable of the substituted terms.
    """
    sigma = {k: v for k, v in sigma.items() if not (isinstance(v, Var) and v.name == k)}
    if not sigma:
        return node
    match node:
        case Rule(name, inst, subs):
            sigma = {k: v for k, v in sigma.items() if k not in inst.fresh}
            if not sigma:
                return node
            rng = frozenset().union(*(free_vars(v) for v in sigma.values()))
            clash = [x for x in inst.fresh if x in rng]
            if clash:
                avoid = set(proof_names(node)) | rng | sigma.keys()
                renaming: dict[str, Term] = {}
                for x in clash:
                    y = fresh_name(x, avoid)
                    avoid.add(y)
                    renaming[x] = Var(y)
                node = _rename_fresh(node, renaming)
                inst, subs = node.inst, node.subs
            new_inst = Inst(
                terms={k: subst_many(t, sigma) for k, t in inst.terms.items()},
                templates={k: _subst_tpl(t, sigma) for k, t in inst.templates.items()},
                args=None if inst.args is None else tuple(subst_many(t, sigma) for t in inst.args),
                fresh=inst.fresh,
                reverse=inst.reverse,
            )
            return Rule(name, new_inst, tuple(subst_proof(s, sigma) for s in subs), node.span)
        case Assume(labels, body, stated):
            return Assume(
                labels,
                subst_proof(body, sigma),
                tuple(None if j is None else j.subst(sigma) for j in stated),
                node.span,
            )
        case LemmaRef(name, lsigma):
            return LemmaRef(name, {k: subst_many(t, sigma) for k, t in lsigma.items()}, node.span)
        case Placeholder(j, reqs, uses):
            return Placeholder(
                j.subst(sigma),
                tuple(r.subst(sigma) for r in reqs),
                tuple(subst_proof(u, sigma) for u in uses),
                node.span,
            )
        case Checked(j):
            return Checked(j.subst(sigma), node.span)
    return node


def _rename_fresh(node: Rule, renaming: dict[str, Term]) -> Rule:
    fresh = tuple(renaming[x].name if x in renaming else x for x in node.inst.fresh)
    stripped = replace(node, inst=replace(node.inst, fresh=()))
    renamed = subst_proof(stripped, renaming)
    assert isinstance(renamed, Rule)
    return replace(renamed, inst=replace(renamed.inst, fresh=fresh))


def replace_hyp(node: ProofNode, label: str, proof: ProofNode) -> ProofNode:
    """Replace free uses of hypothesis ``label`` by ``proof`` (a cut).

    Stops at hypothetical subproofs that rebind ``label``.
    """
    match node:
        case Hyp(l) if l == label:
            return proof
        case Rule(name, inst, subs):
            return Rule(name, inst, tuple(replace_hyp(s, label, proof) for s in subs), node.span)
        case Assume(labels, body, stated):
            if label in labels:
                return node
            return Assume(labels, replace_hyp(body, label, proof), stated, node.span)
        case Placeholder(j, reqs, uses):
            return Placeholder(j, reqs, tuple(replace_hyp(u, label, proof) for u in uses), node.span)
    return node


def rule(name: str, *subs: ProofNode, reverse: bool = False, fresh=(), args=None, **kw) -> Rule:
    """Build a rule node; keyword terms go to ``inst.terms`` and Templates to ``inst.templates``."""
    terms = {k: v for k, v in kw.items() if isinstance(v, Term)}
    templates = {k: v for k, v in kw.items() if isinstance(v, Template)}
    extra = set(kw) - terms.keys() - templates.keys()
    if extra:
        raise TypeError(f"unexpected instantiation keys {sorted(extra)}")
    return Rule(
        name,
        Inst(terms, templates, None if args is None else tuple(args), tuple(fresh), reverse),
        tuple(subs),
    )


def assume(*labels: str, body: ProofNode) -> Assume:
    return Assume(tuple(labels), body)
