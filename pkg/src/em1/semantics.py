"""State-dependent meaning of terms and formulas.

An *individual* is a map from states to values.  Every compound is
evaluated with all of its parts read at the same state, which makes the
resulting maps global.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import ArityError
from .state import State, leq
from .syntax import (
    And,
    ChiApp,
    Eq,
    FunApp,
    Implies,
    Not,
    Or,
    PhiApp,
    PredApp,
    Succ,
    Var,
    as_numeral,
    show,
)


@dataclass(frozen=True)
class Individual:
    fn: Callable[[State], object]
    desc: str = "<individual>"

    def eval(self, s: State):
        return self.fn(s)

    def __repr__(self):
        return self.desc


class BoolIndividual(Individual):
    pass


_CONSTS: dict = {}


def const(n) -> Individual:
    """The constant map ``lambda _: n``."""
    ind = _CONSTS.get(n) if type(n) is int and n < 1024 else None
    if ind is None:
        cls = BoolIndividual if isinstance(n, bool) else Individual
        ind = cls(lambda _s, n=n: n, f"const({n})")
        if type(n) is int and n < 1024:
            _CONSTS[n] = ind
    return ind


class Environment(Mapping):
    """Variables to individuals; missing variables read as ``const(0)``."""

    __slots__ = ("_map",)

    def __init__(self, bindings: Mapping | None = None, **kw):
        m = dict(bindings or {}, **kw)
        self._map = {x: (v if isinstance(v, Individual) else const(int(v))) for x, v in m.items()}

    def __getitem__(self, x) -> Individual:
        return self._map.get(x) or const(0)

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __contains__(self, x):
        return x in self._map

    def extend(self, x: str, v) -> Environment:
        return Environment({**self._map, x: v})

    def __repr__(self):
        return "{" + ", ".join(f"{x}->{v!r}" for x, v in self._map.items()) + "}"


def _check_guard_arity(registry, pred, m):
    if registry is None:
        return
    d = registry[pred]
    if not d.is_predicate or d.arity != len(m) + 1:
        raise ArityError(f"{pred} takes {d.arity - 1} guard argument(s), got {len(m)}")


def sem_chi(pred: str, m, s: State, registry=None) -> bool:
    _check_guard_arity(registry, pred, m)
    return s.witness(pred, m) is not None


def sem_phi(pred: str, m, s: State, registry=None) -> int:
    _check_guard_arity(registry, pred, m)
    n = s.witness(pred, m)
    return 0 if n is None else n


def _term_fn(t, env: Environment, model) -> Callable[[State], int]:
    n = as_numeral(t)
    if n is not None:
        return lambda _s: n
    if isinstance(t, Var):
        return env[t.name].fn
    if isinstance(t, Succ):
        f = _term_fn(t.arg, env, model)
        return lambda s: f(s) + 1
    parts = [_term_fn(a, env, model) for a in t.args]
    if isinstance(t, FunApp):
        name = t.fun
        return lambda s: model.eval_fun(name, [g(s) for g in parts])
    if isinstance(t, PhiApp):
        pred = t.pred
        return lambda s: sem_phi(pred, tuple(g(s) for g in parts), s)
    raise TypeError(f"not a term: {t!r}")


def _formula_fn(a, env: Environment, model) -> Callable[[State], bool]:
    if isinstance(a, Eq):
        l, r = _term_fn(a.lhs, env, model), _term_fn(a.rhs, env, model)
        return lambda s: l(s) == r(s)
    if isinstance(a, PredApp):
        parts = [_term_fn(t, env, model) for t in a.args]
        pred = a.pred
        return lambda s: model.eval_pred(pred, [g(s) for g in parts])
    if isinstance(a, ChiApp):
        parts = [_term_fn(t, env, model) for t in a.args]
        pred = a.pred
        return lambda s: sem_chi(pred, tuple(g(s) for g in parts), s)
    if isinstance(a, Not):
        f = _formula_fn(a.arg, env, model)
        return lambda s: not f(s)
    l, r = _formula_fn(a.left, env, model), _formula_fn(a.right, env, model)
    if isinstance(a, And):
        return lambda s: l(s) and r(s)
    if isinstance(a, Or):
        return lambda s: l(s) or r(s)
    if isinstance(a, Implies):
        return lambda s: (not l(s)) or r(s)
    raise TypeError(f"not a formula: {a!r}")


def _env(env) -> Environment:
    return env if isinstance(env, Environment) else Environment(env)


def denote_term(t, env: Environment, model) -> Individual:
    model.registry.check_expr(t)
    env = _env(env)
    return Individual(_term_fn(t, env, model), f"[[{show(t)}]]")


def denote_formula(a, env: Environment, model) -> BoolIndividual:
    model.registry.check_expr(a)
    env = _env(env)
    return BoolIndividual(_formula_fn(a, env, model), f"[[{show(a)}]]")


def of_term(t, env: Environment, model) -> Individual:
    return denote_term(t, env, model)


def of_formula(a, env: Environment, model) -> BoolIndividual:
    return denote_formula(a, env, model)


# -- state monad ------------------------------------------------------------


def unit(x) -> Individual:
    return const(x)


def extend(f: Callable[[object], Individual]) -> Callable[[Individual], Individual]:
    """Kleisli extension: ``extend(f)(alpha)(s) = f(alpha(s))(s)``."""

    def lifted(alpha: Individual) -> Individual:
        return Individual(lambda s: f(alpha.fn(s)).fn(s), f"ext({alpha.desc})")

    return lifted


# -- globality and convergence ------------------------------------------------


def is_global_at(f: Callable[[Individual, State], object], alpha: Individual, s: State) -> bool:
    return f(alpha, s) == f(const(alpha.eval(s)), s)


@dataclass(frozen=True)
class WISequence:
    """Finite weakly increasing run of states."""

    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        for i in range(1, len(self.states)):
            if not leq(self.states[i - 1], self.states[i]):
                raise ValueError(f"sequence decreases at index {i}")

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]


def stabilization_point(v: Individual, seq) -> int:
    """Least ``i`` after which ``v`` is constant along the finite sequence."""
    values = [v.eval(s) for s in seq]
    i = len(values) - 1
    while i > 0 and values[i - 1] == values[-1]:
        i -= 1
    return max(i, 0)
