from __future__ import annotations

import random

import pytest

from em1.errors import ExtractionError
from em1.extraction import extract_realizer, extract_witness, find_target, forces_check
from em1.laws import world
from em1.proofs import MP, ChiAxiom, Ind, Sub, check_proof, chi_leaves
from em1.realizer import POLICIES, MergePolicy, chi_realizer, find_prefix_point, merge_lifted
from em1.semantics import Environment, const
from em1.state import BOTTOM, Atom, State
from em1.syntax import PhiApp, Var, free_vars

SQ93 = State([Atom("SQ", (9,), 3)])


def test_forces_sq_syllogism(sq):
    prf = sq.proofs["main"]
    concl = check_proof(prf, sq.registry)
    env = Environment(x=9, y=3)
    r = extract_realizer(prf, env, sq.model)
    state, holds, trace = forces_check(r, env, concl, sq.model)
    assert state == SQ93 and holds and len(trace) == 2


def test_forces_when_antecedent_is_false(sq):
    prf = sq.proofs["main"]
    concl = check_proof(prf, sq.registry)
    env = Environment(x=8, y=3)
    r = extract_realizer(prf, env, sq.model)
    assert not r.eval(BOTTOM)
    state, holds, _ = forces_check(r, env, concl, sq.model)
    assert state == BOTTOM and holds


def test_trivial_realizer_forces_phi_axiom(core, w):
    prf = core.proofs["phi_only"]
    concl = check_proof(prf, core.registry)
    rng = random.Random(3)
    for _ in range(20):
        s0 = w.random_state(rng, preds=["LT", "SQ"])
        env = Environment(x=rng.randrange(7))
        r = extract_realizer(prf, env, core.model)
        assert r.is_trivial
        assert forces_check(r, env, concl, core.model, s0)[:2] == (s0, True)


def test_chi_leaf_extracts_chi_realizer(sq):
    r = extract_realizer(ChiAxiom("SQ", (Var("x"),), Var("y")), Environment(x=9, y=3), sq.model)
    assert r.tag[0] == "chi" and r.eval(BOTTOM) == SQ93


def test_witness_examples(sq, core):
    prf = sq.proofs["main"]
    w = extract_witness(prf, Environment(x=9, y=3), sq.model, "SQ")
    assert (w.value, w.state) == (3, SQ93)
    w7 = extract_witness(prf, Environment(x=7, y=3), sq.model, "SQ")
    assert (w7.value, w7.state) == (0, BOTTOM)
    pure = extract_witness(core.proofs["phi_ind"], Environment(y=2), core.model, "LT")
    assert len(pure.trace) == 1 and pure.state == BOTTOM
    lw = extract_witness(core.proofs["lt_witness"], {}, core.model)
    assert lw.value == 1 and lw.state == State([Atom("LT", (0,), 1)])


def test_witness_target_selection(sq, core):
    prf = sq.proofs["main"]
    target = PhiApp("SQ", (Var("x"),))
    assert extract_witness(prf, Environment(x=4, y=2), sq.model, target).value == 2
    with pytest.raises(ExtractionError):
        extract_witness(prf, Environment(x=4, y=2), sq.model, "LT")
    with pytest.raises(ExtractionError):
        extract_witness(prf, Environment(x=4, y=2), sq.model, PhiApp("SQ", (Var("y"),)))
    with pytest.raises(ExtractionError):
        find_target(check_proof(core.proofs["add_one"], core.registry))


def test_merge_of_two_leaves_has_intersected_prefix(core, w):
    prf = core.proofs["two_chi"]
    env = Environment(x=1, y=2, z=4, w=2)
    r = extract_realizer(prf, env, core.model)
    lt = chi_realizer(core.model, "LT", [const(1)], const(2))
    sq_ = chi_realizer(core.model, "SQ", [const(4)], const(2))
    rng = random.Random(5)
    states = [w.random_state(rng, preds=["LT", "SQ"]) for _ in range(100)]
    states += [State([Atom("LT", (1,), 2)]), State([Atom("SQ", (4,), 2)]), State([Atom("LT", (1,), 2), Atom("SQ", (4,), 2)])]
    for s in states:
        assert (not r.eval(s)) == (not lt.eval(s) and not sq_.eval(s))


def _shape(tag):
    kind = tag[0]
    if kind == "merged":
        return ("merged", _shape(tag[1]), _shape(tag[2]))
    if kind == "induction":
        return ("induction", _shape(tag[1]), _shape(tag[2]))
    return (kind,)


def _expected(prf):
    if not chi_leaves(prf):
        return ("trivial",)
    if isinstance(prf, ChiAxiom):
        return ("chi",)
    if isinstance(prf, MP):
        minor, major = _expected(prf.minor), _expected(prf.major)
        if minor == ("trivial",):
            return major
        if major == ("trivial",):
            return minor
        return ("merged", minor, major)
    if isinstance(prf, Sub):
        return _expected(prf.proof)
    if isinstance(prf, Ind):
        return ("induction", _expected(prf.base), _expected(prf.step))
    raise AssertionError(prf)


def test_extraction_is_structural(core, sq):
    for prog in (core, sq):
        for prf in prog.proofs.values():
            r = extract_realizer(prf, Environment(), prog.model)
            assert _shape(r.tag) == _expected(prf)


def test_chi_free_proofs_extract_to_bottom(core, w):
    rng = random.Random(9)
    for prf in core.proofs.values():
        if chi_leaves(prf):
            continue
        concl = check_proof(prf, core.registry)
        env = Environment({v: rng.randrange(7) for v in free_vars(concl)})
        r = extract_realizer(prf, env, core.model)
        assert all(not r.eval(w.random_state(rng, preds=["LT", "SQ"])) for _ in range(30))


@pytest.mark.parametrize("policy", POLICIES, ids=lambda p: p.value)
def test_end_to_end_soundness(core, sq, w, policy):
    rng = random.Random(11)
    for prog in (core, sq):
        for name, prf in prog.proofs.items():
            concl = check_proof(prf, prog.registry)
            for _ in range(10):
                env = Environment({v: rng.randrange(7) for v in sorted(free_vars(concl))})
                s0 = w.random_state(rng, preds=["LT", "SQ"])
                r = extract_realizer(prf, env, prog.model, policy)
                state, holds, trace = forces_check(r, env, concl, prog.model, s0, cap=100)
                assert holds, (name, env, s0)
                assert s0.issubset(state)


def test_sampled_prefix_points_force(core, w):
    # not only reachable prefix points: any sampled state where the realizer is idle
    rng = random.Random(13)
    from em1.semantics import denote_formula

    for prf in core.proofs.values():
        concl = check_proof(prf, core.registry)
        env = Environment({v: rng.randrange(4) for v in free_vars(concl)})
        r = extract_realizer(prf, env, core.model)
        v = denote_formula(concl, env, core.model)
        for _ in range(200):
            s = w.random_state(rng, preds=["LT", "SQ"])
            if not r.eval(s):
                assert v.eval(s)


def test_induction_with_chi_learns_every_instance(core):
    prf = core.proofs["chi_ind"]
    for policy in POLICIES:
        r = extract_realizer(prf, Environment(y=4), core.model, policy)
        tr = find_prefix_point(r, BOTTOM)
        assert tr.final_state == State([Atom("LT", (i,), i + 1) for i in range(5)])


def test_nested_guard_backtracks(core):
    # the guard argument phi_LT(0) changes after the first atom is learned
    prf = core.proofs["chi_nested"]
    r = extract_realizer(prf, Environment(x=0, y=5), core.model)
    tr = find_prefix_point(r, BOTTOM)
    assert tr.final_state == State([Atom("LT", (0,), 5)])


def test_general_individuals_in_environment(sq):
    # y bound to the non-constant individual phi_SQ(0)
    from em1.semantics import denote_term

    alpha = denote_term(PhiApp("SQ", (Var("q"),)), Environment(q=0), sq.model)
    env = Environment(x=0).extend("y", alpha)
    prf = sq.proofs["main"]
    r = extract_realizer(prf, env, sq.model, MergePolicy.MIN)
    state, holds, trace = forces_check(r, env, check_proof(prf, sq.registry), sq.model)
    assert state == State([Atom("SQ", (0,), 0)]) and holds and trace.iterations == 1
