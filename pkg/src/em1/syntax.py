"""Terms and formulas of the quantifier-free language with Skolem symbols.

There are no binders, so substitution never needs renaming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class FunApp:
    fun: str
    args: tuple


@dataclass(frozen=True)
class PhiApp:
    """Skolem function symbol attached to a (k+1)-ary predicate; takes k args."""

    pred: str
    args: tuple


Term = Union[Var, Zero, Succ, FunApp, PhiApp]

# -- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class PredApp:
    pred: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class ChiApp:
    """Guard predicate for a (k+1)-ary predicate; takes k args."""

    pred: str
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[PredApp, Eq, ChiApp, Not, And, Or, Implies]

ATOMIC = (PredApp, Eq, ChiApp)
BINARY = (And, Or, Implies)
TERM_TYPES = (Var, Zero, Succ, FunApp, PhiApp)

ZERO = Zero()


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    n = 0
    while isinstance(t, Succ):
        t, n = t.arg, n + 1
    return n if isinstance(t, Zero) else None


def implies(*parts: Formula) -> Formula:
    """Right-nested implication chain: ``implies(a, b, c) == a -> (b -> c)``."""
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Implies(p, out)
    return out


def is_term(e) -> bool:
    return isinstance(e, TERM_TYPES)


# -- free variables and substitution -----------------------------------------


def free_vars(e) -> frozenset:
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Zero):
        return frozenset()
    if isinstance(e, (Succ, Not)):
        return free_vars(e.arg)
    if isinstance(e, (FunApp, PhiApp, PredApp, ChiApp)):
        return frozenset().union(*(free_vars(a) for a in e.args))
    if isinstance(e, Eq):
        return free_vars(e.lhs) | free_vars(e.rhs)
    if isinstance(e, BINARY):
        return free_vars(e.left) | free_vars(e.right)
    raise TypeError(f"not a term or formula: {e!r}")


def substitute(e, x: str, t: Term):
    """Replace every occurrence of variable ``x`` in ``e`` by ``t``."""
    return substitute_many(e, {x: t})


def substitute_many(e, sigma: Mapping[str, Term]):
    """Simultaneous substitution."""
    if isinstance(e, Var):
        return sigma.get(e.name, e)
    if isinstance(e, Zero):
        return e
    if isinstance(e, Succ):
        return Succ(substitute_many(e.arg, sigma))
    if isinstance(e, Not):
        return Not(substitute_many(e.arg, sigma))
    if isinstance(e, (FunApp, PhiApp, PredApp, ChiApp)):
        return type(e)(head(e), tuple(substitute_many(a, sigma) for a in e.args))
    if isinstance(e, Eq):
        return Eq(substitute_many(e.lhs, sigma), substitute_many(e.rhs, sigma))
    if isinstance(e, BINARY):
        return type(e)(substitute_many(e.left, sigma), substitute_many(e.right, sigma))
    raise TypeError(f"not a term or formula: {e!r}")


def head(e) -> str:
    return e.fun if isinstance(e, FunApp) else e.pred


def match(pattern, target, pvars: frozenset, binding: dict | None = None) -> dict | None:
    """First-order matching: find ``b`` with ``substitute_many(pattern, b) == target``.

    Only variables in ``pvars`` may be bound; other variables match themselves.
    """
    b = {} if binding is None else binding
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var) and p.name in pvars:
            prev = b.get(p.name)
            if prev is None:
                b[p.name] = t
            elif prev != t:
                return None
            continue
        if type(p) is not type(t):
            return None
        if isinstance(p, (Var, Zero)):
            if p != t:
                return None
        elif isinstance(p, (Succ, Not)):
            stack.append((p.arg, t.arg))
        elif isinstance(p, (FunApp, PhiApp, PredApp, ChiApp)):
            if head(p) != head(t) or len(p.args) != len(t.args):
                return None
            stack.extend(zip(p.args, t.args))
        elif isinstance(p, Eq):
            stack.append((p.lhs, t.lhs))
            stack.append((p.rhs, t.rhs))
        else:
            stack.append((p.left, t.left))
            stack.append((p.right, t.right))
    return b


def subterms(e):
    """Pre-order walk over every term and formula node in ``e``."""
    yield e
    if isinstance(e, (Succ, Not)):
        yield from subterms(e.arg)
    elif isinstance(e, (FunApp, PhiApp, PredApp, ChiApp)):
        for a in e.args:
            yield from subterms(a)
    elif isinstance(e, Eq):
        yield from subterms(e.lhs)
        yield from subterms(e.rhs)
    elif isinstance(e, BINARY):
        yield from subterms(e.left)
        yield from subterms(e.right)


def is_l0(e) -> bool:
    """True when ``e`` mentions no Skolem or guard symbol."""
    return not any(isinstance(n, (PhiApp, ChiApp)) for n in subterms(e))


# -- printing ----------------------------------------------------------------

_CONNECTIVE = {And: "and", Or: "or", Implies: "implies"}


def show(e) -> str:
    """Render in the same s-expression syntax the program reader accepts."""
    if isinstance(e, Var):
        return e.name
    n = as_numeral(e) if isinstance(e, (Zero, Succ)) else None
    if n is not None:
        return str(n)
    if isinstance(e, Succ):
        return f"(succ {show(e.arg)})"
    if isinstance(e, FunApp):
        return "(" + " ".join([e.fun, *map(show, e.args)]) + ")"
    if isinstance(e, PhiApp):
        return "(" + " ".join(["phi", e.pred, *map(show, e.args)]) + ")"
    if isinstance(e, PredApp):
        return "(" + " ".join([e.pred, *map(show, e.args)]) + ")"
    if isinstance(e, ChiApp):
        return "(" + " ".join(["chi", e.pred, *map(show, e.args)]) + ")"
    if isinstance(e, Eq):
        return f"(= {show(e.lhs)} {show(e.rhs)})"
    if isinstance(e, Not):
        return f"(not {show(e.arg)})"
    if isinstance(e, BINARY):
        return f"({_CONNECTIVE[type(e)]} {show(e.left)} {show(e.right)})"
    raise TypeError(f"not a term or formula: {e!r}")
