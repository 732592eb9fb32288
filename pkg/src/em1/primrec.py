"""Primitive recursive definitions and their indexed registry.

A definition body is a *schema expression*: a term built from parameters,
``0``, ``succ`` and calls to earlier functions (composition), optionally
containing bounded iterations ``Rec``.  ``Rec(count, base, k, acc, step)``
evaluates ``base`` and then applies ``step`` ``count`` times, with ``k``
bound to the iteration index and ``acc`` to the running value.  This is the
Kleene recursion schema with the auxiliary functions written inline.

The registry index of a definition doubles as its Goedel number: two
predicate names denote the same predicate iff they are the same entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ArityError, CyclicDefinition, DuplicateDeclaration, UndeclaredName
from .syntax import (
    ZERO,
    ChiApp,
    Eq,
    FunApp,
    Implies,
    Not,
    PhiApp,
    PredApp,
    Succ,
    Var,
    Zero,
    free_vars,
    head,
    show,
    subterms,
    substitute_many,
)

FUNCTION = "function"
PREDICATE = "predicate"


@dataclass(frozen=True)
class Rec:
    count: object
    base: object
    k: str
    acc: str
    step: object


@dataclass(frozen=True)
class PrimRecDef:
    name: str
    params: tuple
    body: object
    kind: str = FUNCTION
    index: int = -1

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def is_predicate(self) -> bool:
        return self.kind == PREDICATE


def schema_nodes(e) -> Iterator:
    yield e
    if isinstance(e, Succ):
        yield from schema_nodes(e.arg)
    elif isinstance(e, FunApp):
        for a in e.args:
            yield from schema_nodes(a)
    elif isinstance(e, Rec):
        for part in (e.count, e.base, e.step):
            yield from schema_nodes(part)


def has_rec(e) -> bool:
    return any(isinstance(n, Rec) for n in schema_nodes(e))


def show_schema(e) -> str:
    if isinstance(e, Rec):
        return f"(rec {show_schema(e.count)} {show_schema(e.base)} ({e.k} {e.acc}) {show_schema(e.step)})"
    if isinstance(e, Succ) and has_rec(e):
        return f"(succ {show_schema(e.arg)})"
    if isinstance(e, FunApp) and has_rec(e):
        return "(" + " ".join([e.fun, *map(show_schema, e.args)]) + ")"
    return show(e)


class Registry:
    """Ordered, append-only table of definitions."""

    def __init__(self, defs=()):
        self._defs: dict[str, PrimRecDef] = {}
        for d in defs:
            self.add(d)

    def __len__(self):
        return len(self._defs)

    def __iter__(self):
        return iter(self._defs.values())

    def __contains__(self, name):
        return name in self._defs

    def __getitem__(self, name) -> PrimRecDef:
        try:
            return self._defs[name]
        except KeyError:
            raise UndeclaredName(f"undeclared name {name!r}") from None

    def get(self, name):
        return self._defs.get(name)

    def by_index(self, i: int) -> PrimRecDef:
        return list(self._defs.values())[i]

    @property
    def functions(self) -> list:
        return [d for d in self if not d.is_predicate]

    @property
    def predicates(self) -> list:
        return [d for d in self if d.is_predicate]

    def add(self, d: PrimRecDef, where=(None, None)) -> PrimRecDef:
        if d.name in self._defs:
            raise DuplicateDeclaration(f"{d.name!r} is already declared", *where)
        if len(set(d.params)) != len(d.params):
            raise ArityError(f"{d.name}: repeated parameter name", *where)
        self._check_body(d, d.body, frozenset(d.params), where)
        d = PrimRecDef(d.name, tuple(d.params), d.body, d.kind, len(self._defs))
        self._defs[d.name] = d
        return d

    def _check_body(self, d, e, scope, where):
        if isinstance(e, Var):
            if e.name not in scope:
                raise UndeclaredName(f"{d.name}: unbound variable {e.name!r} in body", *where)
        elif isinstance(e, Zero):
            pass
        elif isinstance(e, Succ):
            self._check_body(d, e.arg, scope, where)
        elif isinstance(e, FunApp):
            if e.fun == d.name:
                raise CyclicDefinition(f"{d.name}: definition refers to itself", *where)
            callee = self._defs.get(e.fun)
            if callee is None:
                raise UndeclaredName(f"{d.name}: call to undeclared function {e.fun!r}", *where)
            if callee.is_predicate:
                raise UndeclaredName(f"{d.name}: {e.fun!r} is a predicate, not a function", *where)
            if len(e.args) != callee.arity:
                raise ArityError(
                    f"{d.name}: {e.fun} expects {callee.arity} argument(s), got {len(e.args)}", *where
                )
            for a in e.args:
                self._check_body(d, a, scope, where)
        elif isinstance(e, Rec):
            if e.k == e.acc or e.k in scope or e.acc in scope:
                raise ArityError(f"{d.name}: rec binders must be fresh and distinct", *where)
            self._check_body(d, e.count, scope, where)
            self._check_body(d, e.base, scope, where)
            self._check_body(d, e.step, scope | {e.k, e.acc}, where)
        else:
            raise TypeError(f"not a schema expression: {e!r}")

    def check_expr(self, e, where=(None, None)) -> None:
        """Raise unless every symbol in the term or formula ``e`` is declared with matching arity."""
        for n in subterms(e):
            if isinstance(n, FunApp):
                d = self._lookup(n.fun, where)
                if d.is_predicate:
                    raise UndeclaredName(f"{n.fun!r} is a predicate, used as a function", *where)
                want = d.arity
            elif isinstance(n, PredApp):
                d = self._lookup(n.pred, where)
                if not d.is_predicate:
                    raise UndeclaredName(f"{n.pred!r} is a function, used as a predicate", *where)
                want = d.arity
            elif isinstance(n, (PhiApp, ChiApp)):
                d = self._lookup(n.pred, where)
                sym = "phi" if isinstance(n, PhiApp) else "chi"
                if not d.is_predicate:
                    raise UndeclaredName(f"{sym} needs a predicate, {n.pred!r} is a function", *where)
                if d.arity == 0:
                    raise ArityError(f"{sym} {n.pred}: predicate must have arity >= 1", *where)
                want = d.arity - 1
            else:
                continue
            if len(n.args) != want:
                label = head(n) if isinstance(n, (FunApp, PredApp)) else f"{sym} {n.pred}"
                raise ArityError(f"{label} expects {want} argument(s), got {len(n.args)}", *where)

    def _lookup(self, name, where):
        d = self._defs.get(name)
        if d is None:
            raise UndeclaredName(f"undeclared name {name!r}", *where)
        return d

    def defining_equations(self, name: str) -> list:
        """Equation schemata for ``name`` as ``(formula, pattern variables)`` pairs.

        Empty when the body cannot be stated with first-order terms (nested
        iterations, or an iteration whose base or step mentions the counter).
        """
        d = self[name]
        params = [Var(p) for p in d.params]
        body = d.body
        if d.is_predicate:
            if has_rec(body):
                return []
            lhs = PredApp(d.name, tuple(params))
            nonzero = Not(Eq(body, ZERO))
            pv = frozenset(d.params)
            return [(Implies(lhs, nonzero), pv), (Implies(nonzero, lhs), pv)]
        if not has_rec(body):
            return [(Eq(FunApp(d.name, tuple(params)), body), frozenset(d.params))]
        if not (isinstance(body, Rec) and isinstance(body.count, Var) and body.count.name in d.params):
            return []
        if has_rec(body.base) or has_rec(body.step):
            return []
        y = body.count.name
        if y in free_vars(body.base) or y in free_vars(body.step):
            return []
        k = Var(body.k)

        def at(t):
            return tuple(t if p == y else Var(p) for p in d.params)

        base_eq = Eq(FunApp(d.name, at(ZERO)), body.base)
        step_rhs = substitute_many(body.step, {body.acc: FunApp(d.name, at(k))})
        step_eq = Eq(FunApp(d.name, at(Succ(k))), step_rhs)
        others = frozenset(p for p in d.params if p != y)
        return [(base_eq, others), (step_eq, others | {body.k})]
