"""Evaluation in the standard model of arithmetic."""

from __future__ import annotations

import os
import threading
from typing import Mapping

from .errors import ArityError, Em1Error, UnboundVariable
from .kernel import compile_registry, make_machine
from .primrec import Registry
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
    Zero,
)

DEFAULT_BUDGET = 10_000_000


def default_budget() -> int:
    return int(os.environ.get("EM1_BUDGET", DEFAULT_BUDGET))


class StandardModel:
    """Oracle for primitive recursive functions and predicates of a registry.

    ``budget`` bounds the schema steps of each single function call.
    """

    def __init__(self, registry: Registry, budget: int | None = None, backend: str | None = None):
        self.registry = registry
        self.budget = default_budget() if budget is None else budget
        self.backend = backend
        self._code = compile_registry(registry)
        self._local = threading.local()

    @property
    def machine(self):
        m = getattr(self._local, "machine", None)
        if m is None:
            m = self._local.machine = make_machine(self._code, self.backend)
        return m

    def _call(self, name, args, budget, want_predicate):
        d = self.registry[name]
        if d.is_predicate != want_predicate:
            kind = "predicate" if want_predicate else "function"
            raise ArityError(f"{name!r} is not a {kind}")
        if len(args) != d.arity:
            raise ArityError(f"{name} expects {d.arity} argument(s), got {len(args)}")
        return self.machine.call(d.index, list(args), self.budget if budget is None else budget)

    def eval_fun(self, name: str, args, budget: int | None = None) -> int:
        return self._call(name, args, budget, False)

    def eval_pred(self, name: str, args, budget: int | None = None) -> bool:
        return self._call(name, args, budget, True) != 0

    def eval_term(self, t, rho: Mapping[str, int]) -> int:
        if isinstance(t, Var):
            try:
                return rho[t.name]
            except KeyError:
                raise UnboundVariable(f"variable {t.name!r} is unbound") from None
        if isinstance(t, Zero):
            return 0
        if isinstance(t, Succ):
            return self.eval_term(t.arg, rho) + 1
        if isinstance(t, FunApp):
            return self.eval_fun(t.fun, [self.eval_term(a, rho) for a in t.args])
        if isinstance(t, PhiApp):
            raise Em1Error("Skolem terms have no value in the standard model alone")
        raise TypeError(f"not a term: {t!r}")

    def eval_closed_formula(self, a, rho: Mapping[str, int] | None = None) -> bool:
        """Classical truth of a formula without Skolem or guard symbols."""
        rho = rho or {}
        if isinstance(a, PredApp):
            return self.eval_pred(a.pred, [self.eval_term(t, rho) for t in a.args])
        if isinstance(a, Eq):
            return self.eval_term(a.lhs, rho) == self.eval_term(a.rhs, rho)
        if isinstance(a, ChiApp):
            raise Em1Error("guard predicates have no value in the standard model alone")
        if isinstance(a, Not):
            return not self.eval_closed_formula(a.arg, rho)
        if isinstance(a, And):
            return self.eval_closed_formula(a.left, rho) and self.eval_closed_formula(a.right, rho)
        if isinstance(a, Or):
            return self.eval_closed_formula(a.left, rho) or self.eval_closed_formula(a.right, rho)
        if isinstance(a, Implies):
            return (not self.eval_closed_formula(a.left, rho)) or self.eval_closed_formula(a.right, rho)
        raise TypeError(f"not a formula: {a!r}")
