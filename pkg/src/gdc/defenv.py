"""First-class definitions ``s(x1, ..., xn) := d``.

Definitions may mention their own symbol (or symbols defined later in the
same file) without restriction.  Symbols that are applied but never defined
act as opaque atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .term import App, Term, free_vars, subst_many, symbols


class DefinitionError(Exception):
    code = "DefinitionError"

    def __init__(self, message: str, symbol: str | None = None):
        super().__init__(message)
        self.symbol = symbol


class RedefinedSymbol(DefinitionError):
    code = "RedefinedSymbol"


class StrayFreeVariable(DefinitionError):
    code = "StrayFreeVariable"


class DuplicateParam(DefinitionError):
    code = "DuplicateParam"


class UnknownSymbol(DefinitionError):
    code = "UnknownSymbol"


class ArityMismatch(DefinitionError):
    code = "ArityMismatch"


@dataclass(frozen=True)
class Definition:
    symbol: str
    params: tuple[str, ...]
    body: Term

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def arity(self) -> int:
        return len(self.params)

    def expand(self, args: Sequence[Term]) -> Term:
        if len(args) != self.arity:
            raise ArityMismatch(
                f"{self.symbol} expects {self.arity} argument(s), got {len(args)}", self.symbol
            )
        return subst_many(self.body, dict(zip(self.params, args)))


@dataclass(frozen=True)
class DefEnv:
    """Append-only, immutable symbol table."""

    defs: tuple[Definition, ...] = ()
    _index: dict[str, Definition] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._index and self.defs:
            object.__setattr__(self, "_index", {d.symbol: d for d in self.defs})

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def __iter__(self) -> Iterator[Definition]:
        return iter(self.defs)

    def __len__(self) -> int:
        return len(self.defs)

    def get(self, symbol: str) -> Definition | None:
        return self._index.get(symbol)

    def __getitem__(self, symbol: str) -> Definition:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(f"{symbol} is not defined", symbol) from None

    def arity(self, symbol: str) -> int | None:
        d = self._index.get(symbol)
        return None if d is None else d.arity

    def add(self, d: Definition) -> "DefEnv":
        return add_def(self, d)

    def expand(self, symbol: str, args: Sequence[Term] = ()) -> Term:
        return expand(self, symbol, args)

    def finalize(self) -> None:
        """Check that every application of a defined symbol has the right arity."""
        for d in self.defs:
            check_arities(self, d.body, where=d.symbol)


def add_def(env: DefEnv, d: Definition) -> DefEnv:
    if d.symbol in env:
        raise RedefinedSymbol(f"{d.symbol} is already defined", d.symbol)
    if len(set(d.params)) != len(d.params):
        raise DuplicateParam(f"{d.symbol}: repeated parameter in {d.params}", d.symbol)
    stray = free_vars(d.body) - set(d.params)
    if stray:
        raise StrayFreeVariable(
            f"{d.symbol}: free variable(s) {', '.join(sorted(stray))} not among parameters", d.symbol
        )
    index = dict(env._index)
    index[d.symbol] = d
    return DefEnv(env.defs + (d,), index)


def expand(env: DefEnv, symbol: str, args: Sequence[Term] = ()) -> Term:
    return env[symbol].expand(tuple(args))


def check_arities(env: DefEnv, t: Term, where: str | None = None) -> None:
    for sym, n in symbols(t):
        k = env.arity(sym)
        if k is not None and k != n:
            loc = f" (in {where})" if where else ""
            raise ArityMismatch(f"{sym} applied to {n} argument(s), defined with {k}{loc}", sym)


def unfold(env: DefEnv, app: App) -> Term:
    return expand(env, app.symbol, app.args)
