from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from em1.errors import AxiomRejected, InductionShapeError, RuleMismatch, TooManyAtoms
from em1.laws import AXIOM_CLASSES, random_axiom, world
from em1.proofs import (
    MP,
    ChiAxiom,
    EqAxiom,
    Ind,
    PhiAxiom,
    PraAxiom,
    Sub,
    TautAxiom,
    check_proof,
    chi_instance,
    derive,
    eq_axiom_check,
    pra_axiom_check,
    tautology_check,
)
from em1.semantics import Environment, denote_formula
from em1.state import BOTTOM
from em1.syntax import ZERO, And, ChiApp, Eq, FunApp, Implies, Not, Or, PhiApp, PredApp, Succ, Var, free_vars

x, y, z = Var("x"), Var("y"), Var("z")
p, q = Eq(x, ZERO), Eq(y, ZERO)
seeds = st.integers(0, 2**32 - 1)


def test_tautology_examples():
    assert tautology_check(Or(p, Not(p)))
    assert not tautology_check(Implies(p, q))
    assert tautology_check(Implies(Implies(Implies(p, q), p), p))


def test_tautology_atom_limit():
    big = Eq(Var("v0"), ZERO)
    for i in range(1, 17):
        big = Or(big, Eq(Var(f"v{i}"), ZERO))
    with pytest.raises(TooManyAtoms):
        tautology_check(big)


def test_pra_examples(w):
    reg = w.registry
    assert pra_axiom_check(Eq(FunApp("add", (x, ZERO)), x), reg)
    assert pra_axiom_check(Eq(FunApp("add", (x, Succ(y))), Succ(FunApp("add", (x, y)))), reg)
    assert pra_axiom_check(Not(Eq(Succ(ZERO), ZERO)), reg)
    assert not pra_axiom_check(Eq(x, Succ(x)), reg)
    assert not pra_axiom_check(Eq(FunApp("add", (x, ZERO)), Succ(x)), reg)
    body = FunApp("sg", (FunApp("monus", (y, x)),))
    assert pra_axiom_check(Implies(PredApp("LT", (x, y)), Not(Eq(body, ZERO))), reg)
    assert pra_axiom_check(Implies(Not(Eq(body, ZERO)), PredApp("LT", (x, y))), reg)


def test_pra_rejects_opaque_definitions():
    from em1.program import parse_program

    prog = parse_program("(deffun d (x) (rec (rec x x (i a) (succ a)) 0 (j b) (succ b)))")
    assert prog.registry.defining_equations("d") == []
    assert not pra_axiom_check(Eq(FunApp("d", (ZERO,)), ZERO), prog.registry)


def test_eq_examples():
    assert eq_axiom_check(Eq(x, x))
    assert eq_axiom_check(Implies(Eq(x, y), Eq(Succ(x), Succ(y))))
    assert not eq_axiom_check(Implies(Eq(x, y), Eq(y, z)))
    assert eq_axiom_check(Implies(Eq(x, y), Eq(y, x)))
    assert eq_axiom_check(Implies(And(Eq(x, y), Eq(y, z)), Eq(x, z)))
    assert eq_axiom_check(Implies(Eq(x, y), Eq(PhiApp("LT", (x,)), PhiApp("LT", (y,)))))
    assert eq_axiom_check(Implies(Eq(x, y), Implies(ChiApp("LT", (x,)), ChiApp("LT", (y,)))))
    lt = lambda a, b: PredApp("LT", (a, b))  # noqa: E731
    assert eq_axiom_check(Implies(And(Eq(x, y), Eq(z, x)), Implies(lt(x, z), lt(y, x))))
    assert not eq_axiom_check(Implies(Eq(x, y), Implies(lt(x, z), lt(y, x))))


def test_chi_axiom_conclusion(w):
    assert check_proof(ChiAxiom("SQ", (x,), y), w.registry) == Implies(PredApp("SQ", (x, y)), ChiApp("SQ", (x,)))


def test_mp_over_phi_axiom_and_a_guard(core):
    d = derive(core.proofs["lt_witness"], core.registry)
    assert isinstance(d.proof.major, PhiAxiom)
    assert d.premises[1].conclusion == ChiApp("LT", (ZERO,))
    assert d.conclusion == PredApp("LT", (ZERO, PhiApp("LT", (ZERO,))))


def test_mp_mismatch(w):
    reg = w.registry
    with pytest.raises(RuleMismatch):
        check_proof(MP(PhiAxiom("LT", (x,)), PhiAxiom("LT", (y,))), reg)
    with pytest.raises(RuleMismatch):
        check_proof(MP(EqAxiom(Eq(x, x)), EqAxiom(Eq(x, x))), reg)


def test_axiom_rejections(w):
    reg = w.registry
    with pytest.raises(AxiomRejected):
        check_proof(TautAxiom(Implies(p, q)), reg)
    with pytest.raises(AxiomRejected):
        check_proof(PraAxiom(Eq(x, Succ(x))), reg)
    with pytest.raises(AxiomRejected):
        check_proof(EqAxiom(Implies(Eq(x, y), Eq(y, z))), reg)


def test_sub_and_ind(core):
    reg = core.registry
    azl = core.proofs["add_zero_left"]
    assert check_proof(azl, reg) == Eq(FunApp("add", (ZERO, y)), y)
    n = Var("n")
    assert check_proof(Ind(azl.base, azl.step, "n"), reg) == Eq(FunApp("add", (ZERO, n)), n)
    assert free_vars(check_proof(Sub(azl, "y", Succ(Succ(ZERO))), reg)) == frozenset()


def _excluded_middle_on(v):
    return Or(Eq(v, x), Not(Eq(v, x)))


def test_ind_freshness_and_shape(w):
    reg = w.registry
    base = TautAxiom(_excluded_middle_on(ZERO))
    step = TautAxiom(Implies(_excluded_middle_on(y), _excluded_middle_on(Succ(y))))
    assert check_proof(Ind(base, step, "n"), reg) == _excluded_middle_on(Var("n"))
    with pytest.raises(InductionShapeError):
        check_proof(Ind(base, step, "x"), reg)  # x occurs in the induction formula
    with pytest.raises(InductionShapeError):
        check_proof(Ind(TautAxiom(_excluded_middle_on(Succ(ZERO))), step, "y"), reg)  # wrong base
    with pytest.raises(InductionShapeError):
        check_proof(Ind(base, base, "y"), reg)  # step is not an implication
    with pytest.raises(InductionShapeError):
        check_proof(Ind(base, EqAxiom(Implies(Eq(x, y), Eq(y, x))), "y"), reg)  # no variable steps up


def test_checker_is_deterministic(core):
    for prf in core.proofs.values():
        assert check_proof(prf, core.registry) == check_proof(prf, core.registry)


def test_conclusion_variables_come_from_leaves_and_substitutions(core):
    def leaves_fv(prf, reg):
        if isinstance(prf, MP):
            return leaves_fv(prf.major, reg) | leaves_fv(prf.minor, reg)
        if isinstance(prf, Sub):
            return leaves_fv(prf.proof, reg) | free_vars(prf.term)
        if isinstance(prf, Ind):
            return leaves_fv(prf.base, reg) | leaves_fv(prf.step, reg) | {prf.var}
        return free_vars(check_proof(prf, reg))

    for prf in core.proofs.values():
        assert free_vars(check_proof(prf, core.registry)) <= leaves_fv(prf, core.registry)


@settings(max_examples=120)
@given(seeds)
def test_accepted_axioms_are_true_everywhere(seed):
    w = world()
    rng = random.Random(seed)
    kind = rng.choice(AXIOM_CLASSES)
    a = random_axiom(w, rng, kind)
    v = denote_formula(a, w.random_env(rng, general=True), w.model)
    assert all(v.eval(w.random_state(rng)) for _ in range(10))


def test_chi_axiom_can_fail(w):
    a = chi_instance("LT", (x,), y)
    assert not denote_formula(a, Environment(x=1, y=2), w.model).eval(BOTTOM)
