"""Concrete syntax: infix terms, s-expression proofs, ``.gd`` files.

Terms use ASCII keywords (Unicode connectives are accepted on input).
Identifiers bound by an enclosing quantifier, case branch, definition
parameter list, ``vars`` declaration or ``(fresh ...)`` list read as
variables; any other identifier names a defined symbol.  ``?x`` always
denotes the variable ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .defenv import Definition
from .judgment import AnnotatedQuantifier, Judgment, desugar_typed_quantifier
from .kernel import DefItem, Pragma, ProofItem
from .proof import Assume, Hole, Hyp, Inst, LemmaRef, Placeholder, ProofNode, Rule, Span, UseDef
from .term import (
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
    LitFalse,
    LitTrue,
    Ne,
    Not,
    Or,
    Succ,
    TRUE,
    Template,
    Term,
    Var,
    ZERO,
    Zero,
    as_numeral,
    numeral,
)


class GdSyntaxError(Exception):
    code = "SyntaxError"

    def __init__(self, message: str, span: Span | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span[0]}:{self.span[1]}: {self.message}"


class ReservedWord(GdSyntaxError):
    code = "ReservedWord"


class DuplicateProofName(GdSyntaxError):
    code = "DuplicateProofName"


KEYWORDS = frozenset(
    "true false not and or forall exists if then else case of S bool nat obj".split()
)
KINDS = {k.value: k for k in JudgKind}
MAX_NUMERAL = 5000

_UNICODE = {
    "¬": "not", "∧": "and", "∨": "or", "→": "->", "↔": "<->",
    "∀": "forall", "∃": "exists", "≠": "!=", "⇒": "=>",
}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<qvar>\?[A-Za-z_][A-Za-z0-9_']*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<sym><->|->|=>|!=|:=|[()=:.,{}|])
  | (?P<uni>[¬∧∨→↔∀∃≠⇒])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | qvar | num | kw | sym | eof
    text: str
    span: Span


def tokenize(text: str, origin: Span = (1, 1)) -> list[Token]:
    """Split term text into tokens; spans are relative to ``origin``."""
    line, col = origin
    pos = 0
    out: list[Token] = []
    last = origin
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GdSyntaxError(f"unexpected character {text[pos]!r}", (line, col))
        kind = m.lastgroup
        lexeme = m.group()
        span = (line, col)
        if kind == "uni":
            lexeme = _UNICODE[lexeme]
            kind = "kw" if lexeme.isalpha() else "sym"
        elif kind == "ident" and lexeme in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            out.append(Token(kind, lexeme, span))
        consumed = m.group()
        for ch in consumed:
            last = (line, col)
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("eof", "", last))
    return out


# ---------------------------------------------------------------------------
# term parser


class _TermParser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise GdSyntaxError(f"expected {text!r}, found {found!r}", self.tok.span)
        return self.advance()

    def ident(self, what: str = "identifier") -> str:
        t = self.tok
        if t.kind == "kw":
            raise ReservedWord(f"{t.text!r} is a reserved word and cannot be used as {what}", t.span)
        if t.kind != "ident":
            raise GdSyntaxError(f"expected {what}, found {t.text or 'end of input'!r}", t.span)
        self.advance()
        return t.text

    def kind_after_colon(self) -> bool:
        return self.at(":") and self.peek().text in KINDS and self.peek().kind in ("kw",)

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise GdSyntaxError(f"unexpected {self.tok.text!r}", self.tok.span)

    # precedence climbing, lowest first

    def term(self, scope: frozenset[str]) -> Term:
        t = self.iff(scope)
        while self.kind_after_colon():
            self.advance()
            t = Has(t, KINDS[self.advance().text])
        return t

    def iff(self, scope) -> Term:
        t = self.imp(scope)
        while self.at("<->"):
            self.advance()
            t = Iff(t, self.imp(scope))
        return t

    def imp(self, scope) -> Term:
        t = self.disj(scope)
        if self.at("->"):
            self.advance()
            return Imp(t, self.imp(scope))
        return t

    def disj(self, scope) -> Term:
        t = self.conj(scope)
        while self.at("or"):
            self.advance()
            t = Or(t, self.conj(scope))
        return t

    def conj(self, scope) -> Term:
        t = self.neg(scope)
        while self.at("and"):
            self.advance()
            t = And(t, self.neg(scope))
        return t

    def neg(self, scope) -> Term:
        if self.at("not"):
            self.advance()
            return Not(self.neg(scope))
        return self.cmp(scope)

    def cmp(self, scope) -> Term:
        t = self.atom(scope)
        if self.at("=") or self.at("!="):
            op = self.advance().text
            r = self.atom(scope)
            if self.at("=") or self.at("!="):
                raise GdSyntaxError("comparisons do not chain; add parentheses", self.tok.span)
            return Eq(t, r) if op == "=" else Ne(t, r)
        return t

    def atom(self, scope) -> Term:
        t = self.tok
        if t.kind == "num":
            self.advance()
            n = int(t.text)
            if n > MAX_NUMERAL:
                raise GdSyntaxError(f"numeral {n} exceeds the limit {MAX_NUMERAL}", t.span)
            return numeral(n)
        if t.kind == "qvar":
            self.advance()
            return Var(t.text[1:])
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                return App(t.text, self.args(scope))
            return Var(t.text) if t.text in scope else App(t.text, ())
        if self.at("("):
            self.advance()
            inner = self.term(scope)
            self.expect(")")
            return inner
        if self.at("true"):
            self.advance()
            return TRUE
        if self.at("false"):
            self.advance()
            return FALSE
        if self.at("S"):
            self.advance()
            self.expect("(")
            inner = self.term(scope)
            self.expect(")")
            return Succ(inner)
        if self.at("forall") or self.at("exists"):
            q = Forall if self.advance().text == "forall" else Exists
            x = self.ident("a bound variable")
            kind = None
            if self.at(":"):
                self.advance()
                k = self.advance()
                if k.text not in KINDS:
                    raise GdSyntaxError(f"expected a kind after ':', found {k.text!r}", k.span)
                kind = KINDS[k.text]
            self.expect(".")
            body = self.term(scope | {x})
            if kind is None:
                return q(x, body)
            return desugar_typed_quantifier(AnnotatedQuantifier(q, x, kind, body))
        if self.at("if"):
            self.advance()
            c = self.term(scope)
            self.expect("then")
            a = self.term(scope)
            self.expect("else")
            return If(c, a, self.term(scope))
        if self.at("case"):
            self.advance()
            s = self.term(scope)
            self.expect("of")
            self.expect("{")
            z = self.tok
            if not (z.kind == "num" and z.text == "0"):
                raise GdSyntaxError("expected '0' pattern", z.span)
            self.advance()
            self.expect("=>")
            zero = self.term(scope)
            self.expect("|")
            self.expect("S")
            self.expect("(")
            p = self.ident("a predecessor variable")
            self.expect(")")
            self.expect("=>")
            succ = self.term(scope | {p})
            self.expect("}")
            return Case(s, zero, p, succ)
        if t.kind == "kw":
            raise ReservedWord(f"unexpected reserved word {t.text!r}", t.span)
        raise GdSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.span)

    def args(self, scope) -> tuple[Term, ...]:
        self.expect("(")
        out: list[Term] = []
        if not self.at(")"):
            out.append(self.term(scope))
            while self.at(","):
                self.advance()
                out.append(self.term(scope))
        self.expect(")")
        return tuple(out)


def parse_term(text: str, variables: Iterable[str] = (), origin: Span = (1, 1)) -> Term:
    p = _TermParser(tokenize(text, origin))
    t = p.term(frozenset(variables))
    p.done()
    return t


def parse_judgment(text: str, variables: Iterable[str] = (), origin: Span = (1, 1)) -> Judgment:
    """``SUBJECT : KIND``; the kind is always the final token."""
    toks = tokenize(text, origin)
    if len(toks) < 4 or toks[-2].text not in KINDS or toks[-3].text != ":":
        raise GdSyntaxError("a judgment must end in ': true|false|bool|obj|nat'", toks[-1].span)
    kind = KINDS[toks[-2].text]
    p = _TermParser(toks[:-3] + [Token("eof", "", toks[-3].span)])
    t = p.term(frozenset(variables))
    p.done()
    return Judgment(t, kind)


# ---------------------------------------------------------------------------
# term printer

_PREC = {Has: 0, Iff: 1, Imp: 2, Or: 3, And: 4, Not: 5, Eq: 6, Ne: 6}
_ATOM = 7


def print_term(t: Term, scope: Iterable[str] = ()) -> str:
    """Canonical text; free variables outside ``scope`` print as ``?x``."""
    return _show(t, 0, True, frozenset(scope))


def print_judgment(j: Judgment, scope: Iterable[str] = ()) -> str:
    return f"{_show(j.subject, 0, False, frozenset(scope))} : {j.kind.value}"


def _show(t: Term, prec: int, tail: bool, scope: frozenset[str]) -> str:
    if isinstance(t, (Forall, Exists, If)):
        wrap = not tail
        return f"({_binder(t, scope)})" if wrap else _binder(t, scope)
    own = _PREC.get(type(t), _ATOM)
    if own < prec:
        return f"({_show(t, 0, True, scope)})"
    match t:
        case Var(name):
            return name if name in scope else f"?{name}"
        case LitTrue():
            return "true"
        case LitFalse():
            return "false"
        case Zero():
            return "0"
        case Succ(inner):
            n = as_numeral(t)
            return str(n) if n is not None else f"S({_show(inner, 0, True, scope)})"
        case App(f, args):
            if not args:
                return f"{f}()" if f in scope else f
            return f"{f}({', '.join(_show(a, 0, True, scope) for a in args)})"
        case Not(a):
            return f"not {_show(a, 5, tail, scope)}"
        case And(l, r):
            return f"{_show(l, 4, False, scope)} and {_show(r, 5, tail, scope)}"
        case Or(l, r):
            return f"{_show(l, 3, False, scope)} or {_show(r, 4, tail, scope)}"
        case Imp(l, r):
            return f"{_show(l, 3, False, scope)} -> {_show(r, 2, tail, scope)}"
        case Iff(l, r):
            return f"{_show(l, 1, False, scope)} <-> {_show(r, 2, tail, scope)}"
        case Eq(l, r):
            return f"{_show(l, _ATOM, False, scope)} = {_show(r, _ATOM, tail, scope)}"
        case Ne(l, r):
            return f"{_show(l, _ATOM, False, scope)} != {_show(r, _ATOM, tail, scope)}"
        case Has(a, k):
            return f"{_show(a, 0, False, scope)} : {k.value}"
        case Case(s, z, p, succ):
            return (
                f"case {_show(s, 0, True, scope)} of {{ 0 => {_show(z, 0, True, scope)}"
                f" | S({p}) => {_show(succ, 0, True, scope | {p})} }}"
            )
    raise TypeError(f"not a term: {t!r}")


def _binder(t: Term, scope: frozenset[str]) -> str:
    match t:
        case Forall(x, body):
            return f"forall {x}. {_show(body, 0, True, scope | {x})}"
        case Exists(x, body):
            return f"exists {x}. {_show(body, 0, True, scope | {x})}"
        case If(c, a, b):
            return (
                f"if {_show(c, 0, True, scope)} then {_show(a, 0, True, scope)}"
                f" else {_show(b, 0, True, scope)}"
            )
    raise TypeError(t)


# ---------------------------------------------------------------------------
# s-expressions


@dataclass(frozen=True)
class SAtom:
    text: str
    quoted: bool
    span: Span


@dataclass(frozen=True)
class SList:
    items: tuple["SAtom | SList", ...]
    span: Span


SExpr = SAtom | SList

_SX_TOKEN = re.compile(r'(?P<ws>\s+)|(?P<open>\()|(?P<close>\))|(?P<str>"(?:[^"\\\n]|\\.)*")|(?P<atom>[^\s()"]+)')


def read_sexprs(text: str, origin: Span = (1, 1)) -> list[SExpr]:
    line, col = origin
    pos = 0
    stack: list[tuple[Span, list]] = [(origin, [])]
    last = origin
    while pos < len(text):
        m = _SX_TOKEN.match(text, pos)
        if m is None:
            raise GdSyntaxError("unterminated string", (line, col))
        span = (line, col)
        kind = m.lastgroup
        if kind == "open":
            stack.append((span, []))
        elif kind == "close":
            if len(stack) == 1:
                raise GdSyntaxError("unbalanced ')'", span)
            start, items = stack.pop()
            stack[-1][1].append(SList(tuple(items), start))
        elif kind == "str":
            raw = m.group()[1:-1]
            stack[-1][1].append(SAtom(re.sub(r"\\(.)", r"\1", raw), True, span))
        elif kind == "atom":
            stack[-1][1].append(SAtom(m.group(), False, span))
        for ch in m.group():
            last = (line, col)
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    if len(stack) != 1:
        raise GdSyntaxError("unbalanced '(': missing ')'", stack[-1][0] if stack[-1][0] else last)
    return stack[0][1]


def _head(sx: SExpr) -> str | None:
    if isinstance(sx, SList) and sx.items and isinstance(sx.items[0], SAtom) and not sx.items[0].quoted:
        return sx.items[0].text
    return None


def _name(sx: SExpr, what: str) -> str:
    if not isinstance(sx, SAtom) or sx.quoted:
        raise GdSyntaxError(f"expected {what}", sx.span)
    return sx.text


def _label(sx: SExpr) -> str:
    name = _name(sx, "a hypothesis label")
    if name.startswith("%"):
        raise ReservedWord(f"label {name!r}: labels starting with '%' are reserved for derived rules", sx.span)
    return name


def _quoted(sx: SExpr, what: str) -> SAtom:
    if not isinstance(sx, SAtom) or not sx.quoted:
        raise GdSyntaxError(f"expected a quoted {what}", sx.span)
    return sx


def _str_origin(a: SAtom) -> Span:
    return (a.span[0], a.span[1] + 1)


def _sx_term(a: SExpr, scope: frozenset[str]) -> Term:
    q = _quoted(a, "term")
    return parse_term(q.text, scope, _str_origin(q))


def _sx_judgment(a: SExpr, scope: frozenset[str]) -> Judgment:
    q = _quoted(a, "judgment")
    return parse_judgment(q.text, scope, _str_origin(q))


def proof_from_sexpr(sx: SExpr, scope: Iterable[str] = ()) -> ProofNode:
    return _proof(sx, frozenset(scope))


def _proof(sx: SExpr, scope: frozenset[str]) -> ProofNode:
    if isinstance(sx, SAtom):
        if sx.text == "_" and not sx.quoted:
            return Hole(span=sx.span)
        raise GdSyntaxError(f"expected a proof, found {sx.text!r}", sx.span)
    head = _head(sx)
    rest = sx.items[1:]
    match head:
        case "hyp":
            _arity(sx, 1)
            return Hyp(_label(rest[0]), sx.span)
        case "usedef":
            _arity(sx, 1)
            return UseDef(_name(rest[0], "a symbol"), sx.span)
        case "lemma":
            if not rest:
                raise GdSyntaxError("(lemma NAME [(inst ...)])", sx.span)
            sigma = {}
            for extra in rest[1:]:
                if _head(extra) != "inst":
                    raise GdSyntaxError("lemma accepts only (inst (x \"term\") ...)", extra.span)
                for entry in extra.items[1:]:
                    if not (isinstance(entry, SList) and len(entry.items) == 2):
                        raise GdSyntaxError("expected (VAR \"term\")", entry.span)
                    sigma[_name(entry.items[0], "a variable")] = _sx_term(entry.items[1], scope)
            return LemmaRef(_name(rest[0], "a lemma name"), sigma, sx.span)
        case "assume":
            _arity(sx, 2)
            labels_sx = rest[0]
            if not isinstance(labels_sx, SList):
                raise GdSyntaxError("expected a list of hypothesis labels", labels_sx.span)
            labels, stated = [], []
            for entry in labels_sx.items:
                if isinstance(entry, SAtom):
                    labels.append(_label(entry))
                    stated.append(None)
                elif len(entry.items) == 2:
                    labels.append(_label(entry.items[0]))
                    stated.append(_sx_judgment(entry.items[1], scope))
                else:
                    raise GdSyntaxError("expected LABEL or (LABEL \"judgment\")", entry.span)
            if all(j is None for j in stated):
                stated = []
            return Assume(tuple(labels), _proof(rest[1], scope), tuple(stated), sx.span)
        case "rule":
            return _rule(sx, scope)
        case "placeholder":
            raise GdSyntaxError("placeholders cannot appear in scripts", sx.span)
    raise GdSyntaxError("expected (rule ...), (hyp ...), (usedef ...), (lemma ...), (assume ...) or _", sx.span)


def _arity(sx: SList, n: int) -> None:
    if len(sx.items) != n + 1:
        raise GdSyntaxError(f"({sx.items[0].text} ...) takes {n} argument(s)", sx.span)


def _rule(sx: SList, scope: frozenset[str]) -> Rule:
    if len(sx.items) < 2:
        raise GdSyntaxError("(rule NAME ...) needs a rule name", sx.span)
    name = _name(sx.items[1], "a rule name")
    inst_sx: SList | None = None
    subs: list[ProofNode] = []
    sub_seen = False
    for part in sx.items[2:]:
        h = _head(part)
        if h == "inst" and inst_sx is None:
            inst_sx = part
        elif h == "sub" and not sub_seen:
            sub_seen = True
            sub_parts = part.items[1:]
        else:
            raise GdSyntaxError("expected (inst ...) or (sub ...)", part.span)
    fresh: tuple[str, ...] = ()
    entries = inst_sx.items[1:] if inst_sx is not None else ()
    for e in entries:
        if _head(e) == "fresh":
            fresh += tuple(_name(x, "a variable") for x in e.items[1:])
    inner = scope | set(fresh)
    terms, templates = {}, {}
    args = None
    reverse = False
    for e in entries:
        h = _head(e)
        if h is None:
            raise GdSyntaxError("expected (KEY ...)", e.span)
        if h == "fresh":
            continue
        if h == "args":
            args = tuple(_sx_term(a, inner) for a in e.items[1:])
        elif h == "dir":
            if len(e.items) != 2 or _name(e.items[1], "fwd or rev") not in ("fwd", "rev"):
                raise GdSyntaxError("expected (dir fwd) or (dir rev)", e.span)
            reverse = e.items[1].text == "rev"
        elif len(e.items) == 2:
            terms[h] = _sx_term(e.items[1], inner)
        elif len(e.items) == 3:
            hole = _name(e.items[1], "a template hole variable")
            templates[h] = Template(hole, _sx_term(e.items[2], inner | {hole}))
        else:
            raise GdSyntaxError(f"malformed instantiation entry ({h} ...)", e.span)
    if sub_seen:
        subs = [_proof(s, inner) for s in sub_parts]
    return Rule(name, Inst(terms, templates, args, fresh, reverse), tuple(subs), sx.span)


def print_proof(node: ProofNode, scope: Iterable[str] = (), indent: int = 0) -> str:
    return _pp(node, frozenset(scope), indent)


_WIDTH = 96


def _q(t: Term, scope: frozenset[str]) -> str:
    return f'"{print_term(t, scope)}"'


def _pp(node: ProofNode, scope: frozenset[str], indent: int, flat: bool = False) -> str:
    """Multi-line layout, except that subtrees fitting in the line width stay on one line."""
    if not flat:
        one = _pp(node, scope, indent, True)
        if indent + len(one) <= _WIDTH:
            return one
    pad = " " * indent
    match node:
        case Hole():
            return "_"
        case Hyp(label):
            return f"(hyp {label})"
        case UseDef(symbol):
            return f"(usedef {symbol})"
        case LemmaRef(name, sigma):
            if not sigma:
                return f"(lemma {name})"
            entries = " ".join(f"({k} {_q(v, scope)})" for k, v in sigma.items())
            return f"(lemma {name} (inst {entries}))"
        case Assume(labels, body, stated):
            if stated:
                heads = " ".join(
                    l if j is None else f'({l} "{print_judgment(j, scope)}")' for l, j in zip(labels, stated)
                )
            else:
                heads = " ".join(labels)
            if flat:
                return f"(assume ({heads}) {_pp(body, scope, 0, True)})"
            return f"(assume ({heads})\n{pad}  {_pp(body, scope, indent + 2)})"
        case Placeholder(j):
            return f'(placeholder "{print_judgment(j, scope)}")'
        case Rule(name, inst, subs):
            inner = scope | set(inst.fresh)
            parts = []
            if inst.fresh:
                parts.append(f"(fresh {' '.join(inst.fresh)})")
            for k, t in inst.terms.items():
                parts.append(f"({k} {_q(t, inner)})")
            for k, tpl in inst.templates.items():
                parts.append(f"({k} {tpl.hole} {_q(tpl.body, inner | {tpl.hole})})")
            if inst.args is not None:
                parts.append(" ".join(["(args", *(_q(a, inner) for a in inst.args)]) + ")")
            if inst.reverse:
                parts.append("(dir rev)")
            head = f"(rule {name}" + (f" (inst {' '.join(parts)})" if parts else "")
            if not subs:
                return head + ")"
            if flat:
                return f"{head} (sub {' '.join(_pp(s, inner, 0, True) for s in subs)}))"
            kids = f"\n{pad}    ".join(_pp(s, inner, indent + 4) for s in subs)
            return f"{head}\n{pad}  (sub\n{pad}    {kids}))"
    raise TypeError(f"not a proof node: {node!r}")


# ---------------------------------------------------------------------------
# files

Item = DefItem | ProofItem | Pragma


@dataclass(frozen=True)
class SourceFile:
    path: str | None
    items: tuple[Item, ...] = field(default_factory=tuple)

    def __iter__(self) -> Iterator[Item]:
        return iter(self.items)

    def proofs(self) -> list[ProofItem]:
        return [i for i in self.items if isinstance(i, ProofItem)]

    def definitions(self) -> list[DefItem]:
        return [i for i in self.items if isinstance(i, DefItem)]


def _strip_comment(line: str) -> str:
    in_str = False
    i = 0
    while i < len(line):
        ch = line[i]
        if in_str and ch == "\\":
            i += 2
            continue
        if ch == '"':
            in_str = not in_str
        elif not in_str and line.startswith("--", i):
            return line[:i]
        i += 1
    return line


def _blocks(text: str) -> list[tuple[int, list[str]]]:
    """Group lines into items: an item starts at a non-blank line in column 1."""
    blocks: list[tuple[int, list[str]]] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            if blocks:
                blocks[-1][1].append("")
            continue
        if not line[0].isspace():
            blocks.append((n, [line]))
        elif not blocks:
            raise GdSyntaxError("indented line outside any item", (n, 1))
        else:
            blocks[-1][1].append(line)
    return blocks


_CLAUSES = ("vars", "assume", "shows", "by")


def parse_file(text: str, path: str | None = None) -> SourceFile:
    items: list[Item] = []
    names: set[str] = set()
    for start, lines in _blocks(text):
        first = lines[0]
        word = first.split(None, 1)[0]
        if word == "def":
            items.append(_parse_def(start, lines))
        elif word == "proof":
            item = _parse_proof(start, lines)
            if item.name in names:
                raise DuplicateProofName(f"proof {item.name!r} is defined twice", (start, 1))
            names.add(item.name)
            items.append(item)
        elif word == "pragma":
            parts = first.split()
            if len(parts) != 3 or any(l.strip() for l in lines[1:]):
                raise GdSyntaxError("expected 'pragma KEY VALUE'", (start, 1))
            items.append(Pragma(parts[1], parts[2], (start, 1)))
        else:
            raise GdSyntaxError(f"expected 'def', 'proof' or 'pragma', found {word!r}", (start, 1))
    return SourceFile(path, tuple(items))


def _joined(start: int, lines: Sequence[str]) -> str:
    return "\n".join(lines)


def _parse_def(start: int, lines: list[str]) -> DefItem:
    text = _joined(start, lines)
    toks = tokenize(text, (start, 1))
    p = _TermParser(toks)
    p.advance()  # 'def'
    name = p.ident("a definition name")
    params: list[str] = []
    if p.at("("):
        p.advance()
        if not p.at(")"):
            params.append(p.ident("a parameter"))
            while p.at(","):
                p.advance()
                params.append(p.ident("a parameter"))
        p.expect(")")
    p.expect(":=")
    body = p.term(frozenset(params))
    p.done()
    return DefItem(Definition(name, tuple(params), body), (start, 1))


def _parse_proof(start: int, lines: list[str]) -> ProofItem:
    header = lines[0].split()
    if len(header) != 2:
        raise GdSyntaxError("expected 'proof NAME'", (start, 1))
    name = header[1]
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
        raise GdSyntaxError(f"bad proof name {name!r}", (start, 7))
    # clauses: an indented line starting with a clause keyword opens a clause
    clauses: list[tuple[str, int, int, list[str]]] = []
    for k, line in enumerate(lines[1:], start=start + 1):
        stripped = line.lstrip()
        word = stripped.split(None, 1)[0] if stripped else ""
        if word in _CLAUSES and not (clauses and clauses[-1][0] == "by"):
            col = len(line) - len(stripped) + 1
            clauses.append((word, k, col, [stripped[len(word):]]))
        elif clauses:
            clauses[-1][3].append(line)
        elif stripped:
            raise GdSyntaxError("expected vars, assume, shows or by", (k, 1))
    variables: set[str] = set()
    hyps: list[tuple[str, Judgment]] = []
    goal = None
    proof = None
    for word, k, col, body_lines in clauses:
        origin = (k, col + len(word))
        body = "\n".join(body_lines)
        if word == "vars":
            for v in body.split():
                if v in KEYWORDS or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", v):
                    raise ReservedWord(f"{v!r} cannot be a variable name", origin)
                variables.add(v)
        elif word == "assume":
            m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*:", body)
            if m is None:
                raise GdSyntaxError("expected 'assume LABEL : JUDGMENT'", origin)
            label = m.group(1)
            if label in {l for l, _ in hyps}:
                raise GdSyntaxError(f"duplicate assumption label {label!r}", origin)
            hyps.append((label, parse_judgment(body[m.end():], variables, (k, origin[1] + m.end()))))
        elif word == "shows":
            goal = parse_judgment(body, variables, origin)
        else:
            if proof is not None:
                raise GdSyntaxError("more than one 'by' clause", (k, col))
            sx = read_sexprs(body, origin)
            if len(sx) != 1:
                raise GdSyntaxError("'by' takes exactly one proof expression", (k, col))
            proof = _proof(sx[0], frozenset(variables))
    if proof is None:
        raise GdSyntaxError(f"proof {name} has no 'by' clause", (start, 1))
    return ProofItem(name, proof, tuple(hyps), frozenset(variables), goal, (start, 1))


def print_item(item: Item) -> str:
    match item:
        case DefItem(d):
            params = f"({', '.join(d.params)})" if d.params else ""
            return f"def {d.symbol}{params} := {print_term(d.body, d.params)}"
        case Pragma(key, value):
            return f"pragma {key} {value}"
        case ProofItem(name, proof, hyps, variables, goal):
            out = [f"proof {name}"]
            scope = frozenset(variables)
            if variables:
                out.append(f"  vars {' '.join(sorted(variables))}")
            for label, j in hyps:
                out.append(f"  assume {label} : {print_judgment(j, scope)}")
            if goal is not None:
                out.append(f"  shows {print_judgment(goal, scope)}")
            out.append(f"  by {print_proof(proof, scope, 2)}")
            return "\n".join(out)
    raise TypeError(item)


def print_file(sf: SourceFile | Iterable[Item]) -> str:
    items = sf.items if isinstance(sf, SourceFile) else tuple(sf)
    return "\n\n".join(print_item(i) for i in items) + "\n"
