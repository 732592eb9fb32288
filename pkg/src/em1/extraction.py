"""From checked proofs to realizers, and from realizers to witnesses."""

from __future__ import annotations

from typing import NamedTuple

from .errors import ExtractionError
from .proofs import MP, ChiAxiom, Derivation, Ind, Sub, chi_leaves, derive
from .realizer import (
    DEFAULT_CAP,
    LearningTrace,
    MergePolicy,
    Realizer,
    chi_realizer,
    find_prefix_point,
    induction_realizer,
    merge_lifted,
    trivial_realizer,
)
from .semantics import Environment, const, denote_formula, denote_term, sem_phi
from .state import BOTTOM, State
from .syntax import PhiApp, show, subterms


def extract_realizer(p, env, model, policy: MergePolicy = MergePolicy.OVERRIDE) -> Realizer:
    """Realizer for the conclusion of ``p`` under ``env``; ``p`` is checked first."""
    env = env if isinstance(env, Environment) else Environment(env)
    return _extract(derive(p, model.registry), env, model, MergePolicy.parse(policy))


def _extract(d: Derivation, env: Environment, model, policy) -> Realizer:
    p = d.proof
    if not chi_leaves(p):
        return trivial_realizer()
    if isinstance(p, ChiAxiom):
        alphas = [denote_term(t, env, model) for t in p.args]
        return chi_realizer(model, p.pred, alphas, denote_term(p.witness, env, model))
    if isinstance(p, MP):
        major, minor = d.premises
        return merge_lifted(_extract(minor, env, model, policy), _extract(major, env, model, policy), policy)
    if isinstance(p, Sub):
        (inner,) = d.premises
        return _extract(inner, env.extend(p.var, denote_term(p.term, env, model)), model, policy)
    if isinstance(p, Ind):
        base, step = d.premises
        v = d.ind_var
        r0 = _extract(base, env, model, policy)
        return induction_realizer(
            r0, lambda n: _extract(step, env.extend(v, const(n)), model, policy), env[p.var], policy
        )
    raise TypeError(f"unexpected proof node {p!r}")


class Forcing(NamedTuple):
    state: State
    holds: bool
    trace: LearningTrace


def forces_check(r: Realizer, env, formula, model, s0: State = BOTTOM, cap: int = DEFAULT_CAP) -> Forcing:
    """Run the learning loop from ``s0`` and evaluate ``formula`` at the prefix point reached."""
    trace = find_prefix_point(r, s0, cap)
    s = trace.final_state
    return Forcing(s, bool(denote_formula(formula, env, model).eval(s)), trace)


class Witness(NamedTuple):
    value: int
    state: State
    trace: LearningTrace
    target: PhiApp


def find_target(formula, pred: str | None = None) -> PhiApp:
    for n in subterms(formula):
        if isinstance(n, PhiApp) and (pred is None or n.pred == pred):
            return n
    what = f"phi {pred}" if pred else "a Skolem term"
    raise ExtractionError(f"conclusion {show(formula)} contains no {what}")


def extract_witness(
    p,
    env,
    model,
    target=None,
    s0: State = BOTTOM,
    cap: int = DEFAULT_CAP,
    policy: MergePolicy = MergePolicy.OVERRIDE,
) -> Witness:
    """Learn a value for a Skolem term of the conclusion of ``p``.

    ``target`` is a ``PhiApp`` occurring in the conclusion, a predicate name
    (its first Skolem occurrence), or None for the first Skolem term.
    """
    env = env if isinstance(env, Environment) else Environment(env)
    conclusion = derive(p, model.registry).conclusion
    if not isinstance(target, PhiApp):
        target = find_target(conclusion, target)
    elif target not in set(subterms(conclusion)):
        raise ExtractionError(f"{show(target)} does not occur in {show(conclusion)}")
    r = extract_realizer(p, env, model, policy)
    s, holds, trace = forces_check(r, env, conclusion, model, s0, cap)
    if not holds:
        raise ExtractionError(f"conclusion {show(conclusion)} is false at the prefix point {s!r}")
    args = tuple(denote_term(t, env, model).eval(s) for t in target.args)
    return Witness(sem_phi(target.pred, args, s), s, trace, target)
