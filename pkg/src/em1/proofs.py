"""Hilbert-style proofs for PRA extended with the guard and Skolem axioms.

Leaves are axiom instances, nodes are the rules MP, SUB and IND.  Proofs
carry no open hypotheses, so SUB needs no side condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import AxiomRejected, InductionShapeError, RuleMismatch, TooManyAtoms
from .primrec import Registry
from .syntax import (
    ATOMIC,
    ZERO,
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
    free_vars,
    head,
    match,
    show,
    substitute,
)

MAX_TAUTOLOGY_ATOMS = 16


@dataclass(frozen=True)
class TautAxiom:
    formula: object


@dataclass(frozen=True)
class PraAxiom:
    formula: object


@dataclass(frozen=True)
class EqAxiom:
    formula: object


@dataclass(frozen=True)
class ChiAxiom:
    """``P(t..., u) -> chi_P(t...)``"""

    pred: str
    args: tuple
    witness: object


@dataclass(frozen=True)
class PhiAxiom:
    """``chi_P(t...) -> P(t..., phi_P(t...))``"""

    pred: str
    args: tuple


@dataclass(frozen=True)
class MP:
    major: object  # proves A -> B
    minor: object  # proves A


@dataclass(frozen=True)
class Sub:
    proof: object
    var: str
    term: object


@dataclass(frozen=True)
class Ind:
    """From A(0) and A(v) -> A(succ v) conclude A(var); ``v`` is inferred."""

    base: object
    step: object
    var: str


LEAVES = (TautAxiom, PraAxiom, EqAxiom, ChiAxiom, PhiAxiom)


def chi_instance(pred, args, witness):
    return Implies(PredApp(pred, tuple(args) + (witness,)), ChiApp(pred, tuple(args)))


def phi_instance(pred, args):
    args = tuple(args)
    return Implies(ChiApp(pred, args), PredApp(pred, args + (PhiApp(pred, args),)))


# -- axiom recognisers --------------------------------------------------------


def atoms_of(a) -> list:
    """Distinct atomic subformulas in first-occurrence order."""
    seen: dict = {}
    stack = [a]
    while stack:
        f = stack.pop()
        if isinstance(f, ATOMIC):
            seen.setdefault(f, None)
        elif isinstance(f, Not):
            stack.append(f.arg)
        else:
            stack.append(f.right)
            stack.append(f.left)
    return list(seen)


def _truth(a, val: dict) -> bool:
    if isinstance(a, ATOMIC):
        return val[a]
    if isinstance(a, Not):
        return not _truth(a.arg, val)
    l = _truth(a.left, val)
    if isinstance(a, And):
        return l and _truth(a.right, val)
    if isinstance(a, Or):
        return l or _truth(a.right, val)
    return (not l) or _truth(a.right, val)


def tautology_check(a) -> bool:
    """Truth-table test of the propositional skeleton of ``a``."""
    atoms = atoms_of(a)
    if len(atoms) > MAX_TAUTOLOGY_ATOMS:
        raise TooManyAtoms(f"{len(atoms)} distinct atoms; at most {MAX_TAUTOLOGY_ATOMS} allowed")
    for row in itertools.product((False, True), repeat=len(atoms)):
        if not _truth(a, dict(zip(atoms, row))):
            return False
    return True


SUCC_ZERO_NEQ_ZERO = Not(Eq(Succ(ZERO), ZERO))


def pra_axiom_check(a, registry: Registry) -> bool:
    """Instance of a defining equation of a registered symbol, or ``not succ(0) = 0``."""
    if a == SUCC_ZERO_NEQ_ZERO:
        return True
    names = set()
    if isinstance(a, Eq) and isinstance(a.lhs, FunApp):
        names.add(a.lhs.fun)
    if isinstance(a, Implies):
        for side in (a.left, a.right):
            if isinstance(side, PredApp):
                names.add(side.pred)
    for name in names:
        if name not in registry:
            continue
        for pattern, pvars in registry.defining_equations(name):
            if match(pattern, a, pvars) is not None:
                return True
    return False


def _conjuncts(a) -> list:
    if isinstance(a, And):
        return _conjuncts(a.left) + _conjuncts(a.right)
    return [a]


def _congruent_pair(lhs, rhs):
    """Argument lists of two applications of one symbol, or None."""
    if isinstance(lhs, Succ) and isinstance(rhs, Succ):
        return (lhs.arg,), (rhs.arg,)
    if type(lhs) is type(rhs) and isinstance(lhs, (FunApp, PhiApp, PredApp, ChiApp)):
        if head(lhs) == head(rhs) and len(lhs.args) == len(rhs.args) and lhs.args:
            return lhs.args, rhs.args
    return None


def eq_axiom_check(a) -> bool:
    """Reflexivity, symmetry, transitivity, or congruence for one symbol."""
    if isinstance(a, Eq):
        return a.lhs == a.rhs
    if not isinstance(a, Implies):
        return False
    hyp, concl = a.left, a.right
    if isinstance(hyp, Eq) and isinstance(concl, Eq):
        if hyp.lhs == concl.rhs and hyp.rhs == concl.lhs:
            return True
    if (
        isinstance(hyp, And)
        and isinstance(hyp.left, Eq)
        and isinstance(hyp.right, Eq)
        and isinstance(concl, Eq)
        and hyp.left.rhs == hyp.right.lhs
        and concl.lhs == hyp.left.lhs
        and concl.rhs == hyp.right.rhs
    ):
        return True
    if isinstance(concl, Eq):
        pair = _congruent_pair(concl.lhs, concl.rhs)
        if pair is not None and isinstance(concl.lhs, (Succ, FunApp, PhiApp)):
            return _conjuncts(hyp) == [Eq(t, u) for t, u in zip(*pair)]
    if isinstance(concl, Implies):
        pair = _congruent_pair(concl.left, concl.right)
        if pair is not None and isinstance(concl.left, (PredApp, ChiApp)):
            return _conjuncts(hyp) == [Eq(t, u) for t, u in zip(*pair)]
    return False


# -- checker ------------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """A checked proof node with its conclusion.

    ``ind_var`` is the premise variable of an IND node (None elsewhere).
    """

    proof: object
    conclusion: object
    premises: tuple = ()
    ind_var: str | None = None


def derive(p, registry: Registry) -> Derivation:
    return _Checker(registry).run(p)


def check_proof(p, registry: Registry):
    """Validate ``p`` and return its conclusion."""
    return derive(p, registry).conclusion


class _Checker:
    def __init__(self, registry):
        self.registry = registry
        self.memo: dict[int, Derivation] = {}

    def run(self, p) -> Derivation:
        key = id(p)
        if key not in self.memo:
            self.memo[key] = self._derive(p)
        return self.memo[key]

    def _derive(self, p) -> Derivation:
        reg = self.registry
        if isinstance(p, TautAxiom):
            reg.check_expr(p.formula)
            if not tautology_check(p.formula):
                raise AxiomRejected(f"not a tautology: {show(p.formula)}")
            return Derivation(p, p.formula)
        if isinstance(p, PraAxiom):
            reg.check_expr(p.formula)
            if not pra_axiom_check(p.formula, reg):
                raise AxiomRejected(f"not a defining-equation instance: {show(p.formula)}")
            return Derivation(p, p.formula)
        if isinstance(p, EqAxiom):
            reg.check_expr(p.formula)
            if not eq_axiom_check(p.formula):
                raise AxiomRejected(f"not an equality axiom: {show(p.formula)}")
            return Derivation(p, p.formula)
        if isinstance(p, ChiAxiom):
            a = chi_instance(p.pred, p.args, p.witness)
            reg.check_expr(a)
            return Derivation(p, a)
        if isinstance(p, PhiAxiom):
            a = phi_instance(p.pred, p.args)
            reg.check_expr(a)
            return Derivation(p, a)
        if isinstance(p, MP):
            major, minor = self.run(p.major), self.run(p.minor)
            imp = major.conclusion
            if not isinstance(imp, Implies):
                raise RuleMismatch(f"MP: major premise is not an implication: {show(imp)}")
            if imp.left != minor.conclusion:
                raise RuleMismatch(
                    f"MP: antecedent {show(imp.left)} does not match minor premise {show(minor.conclusion)}"
                )
            return Derivation(p, imp.right, (major, minor))
        if isinstance(p, Sub):
            reg.check_expr(p.term)
            sub = self.run(p.proof)
            return Derivation(p, substitute(sub.conclusion, p.var, p.term), (sub,))
        if isinstance(p, Ind):
            return self._ind(p)
        raise TypeError(f"not a proof: {p!r}")

    def _ind(self, p: Ind) -> Derivation:
        base, step = self.run(p.base), self.run(p.step)
        imp = step.conclusion
        if not isinstance(imp, Implies):
            raise InductionShapeError(f"IND: step premise is not an implication: {show(imp)}")
        a, a_next = imp.left, imp.right
        v = None
        for cand in sorted(free_vars(a)):
            if substitute(a, cand, Succ(Var(cand))) == a_next:
                v = cand
                break
        if v is None:
            if a == a_next:
                v = p.var  # the induction variable does not occur
            else:
                raise InductionShapeError(
                    f"IND: no variable v with A(v) -> A(succ v) in step premise {show(imp)}"
                )
        if substitute(a, v, ZERO) != base.conclusion:
            raise InductionShapeError(
                f"IND: base {show(base.conclusion)} is not {show(substitute(a, v, ZERO))}"
            )
        if p.var != v and p.var in free_vars(a):
            raise InductionShapeError(f"IND: conclusion variable {p.var!r} is not fresh")
        return Derivation(p, substitute(a, v, Var(p.var)), (base, step), v)


def chi_leaves(p) -> bool:
    """True when some (χ)-axiom instance occurs in ``p``."""
    if isinstance(p, ChiAxiom):
        return True
    if isinstance(p, MP):
        return chi_leaves(p.major) or chi_leaves(p.minor)
    if isinstance(p, Sub):
        return chi_leaves(p.proof)
    if isinstance(p, Ind):
        return chi_leaves(p.base) or chi_leaves(p.step)
    return False
