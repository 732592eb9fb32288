"""Seeded random generators and the randomized law suites.

Every suite takes a ``random.Random`` and a sample count and returns a
:class:`SuiteResult`; nothing here depends on global random state, so a
seed fully determines a run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .program import parse_program
from .proofs import chi_instance, eq_axiom_check, phi_instance, pra_axiom_check, tautology_check
from .realizer import (
    POLICIES,
    MergePolicy,
    Realizer,
    chi_realizer,
    merge,
    merge_lifted,
    r_extend,
    r_unit,
    trivial_realizer,
)
from .semantics import (
    Environment,
    Individual,
    WISequence,
    const,
    denote_formula,
    denote_term,
    extend,
    stabilization_point,
    unit,
)
from .state import BOTTOM, Atom, State, compatible
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
    numeral,
    show,
    substitute,
    substitute_many,
)

WORLD_SOURCE = """
(deffun add (x y) (rec y x (k a) (succ a)))
(deffun mul (x y) (rec y 0 (k a) (add a x)))
(deffun pred (x) (rec x 0 (k a) k))
(deffun monus (x y) (rec y x (k a) (pred a)))
(deffun sg (x) (rec x 0 (k a) 1))
(deffun nsg (x) (monus 1 (sg x)))
(deffun eqf (x y) (nsg (add (monus x y) (monus y x))))
(defpred LT (x y) (sg (monus y x)))
(defpred SQ (x y) (eqf (mul y y) x))
(defpred SUM (x y z) (eqf (add x y) z))
(defpred ALL (x y) 1)
"""

SMALL = 7  # guard arguments and witnesses in generated atoms lie below 2*SMALL
FRESH = "ALL"  # never produced by the term and formula generators
VARS = ("x", "y", "z")


class World:
    """A fixed registry plus a table of the true atoms over small numbers."""

    def __init__(self, source: str = WORLD_SOURCE):
        self.program = parse_program(source)
        self.model = self.program.model
        self.registry = self.program.registry

    @cached_property
    def preds(self) -> list:
        return [d for d in self.registry.predicates if d.arity >= 1]

    @cached_property
    def guard_preds(self) -> list:
        return [d for d in self.preds if d.name != FRESH]

    @cached_property
    def table(self) -> dict:
        """``pred -> [Atom]`` of true atoms with small arguments."""
        out = {}
        for d in self.preds:
            k = d.arity - 1
            atoms = []
            for m in _tuples(k, SMALL):
                for n in range(2 * SMALL):
                    if self.model.eval_pred(d.name, [*m, n]):
                        atoms.append(Atom(d.name, m, n))
            out[d.name] = atoms
        return out

    @cached_property
    def all_atoms(self) -> list:
        return [a for d in self.guard_preds for a in self.table[d.name]]

    # -- states ------------------------------------------------------------

    def random_atom(self, rng: random.Random, preds=None) -> Atom:
        if preds is None:
            return rng.choice(self.all_atoms)
        return rng.choice(self.table[rng.choice(preds)])

    def random_state(self, rng: random.Random, max_atoms: int = 6, like: State | None = None, preds=None) -> State:
        """Random state of at most ``max_atoms`` atoms, compatible with ``like`` if given."""
        index: dict = {}
        for _ in range(rng.randint(0, max_atoms)):
            a = self.random_atom(rng, preds)
            if a.key in index or (like is not None and like.witness(a.pred, a.args) not in (None, a.witness)):
                continue
            index[a.key] = a.witness
        return State._trusted(index)

    def random_chain(self, rng: random.Random, length: int) -> WISequence:
        s = self.random_state(rng, 3)
        seq = [s]
        for _ in range(length - 1):
            if rng.random() < 0.6:
                s = s.union(self.random_state(rng, 2, like=s))
            seq.append(s)
        return WISequence(tuple(seq))

    # -- syntax -------------------------------------------------------------

    def random_term(self, rng: random.Random, depth: int = 3, vars=VARS, phi: bool = True):
        if depth <= 0 or rng.random() < 0.3:
            return Var(rng.choice(vars)) if vars and rng.random() < 0.5 else numeral(rng.randrange(SMALL))
        r = rng.random()
        sub = lambda: self.random_term(rng, depth - 1, vars, phi)  # noqa: E731
        if r < 0.15:
            return Succ(sub())
        if phi and r < 0.55:
            d = rng.choice(self.guard_preds)
            return PhiApp(d.name, tuple(sub() for _ in range(d.arity - 1)))
        name = rng.choice(("add", "pred", "monus", "sg", "eqf") if depth > 1 else ("add", "mul", "pred", "monus"))
        d = self.registry[name]
        return FunApp(name, tuple(sub() for _ in range(d.arity)))

    def random_atomic(self, rng: random.Random, depth: int = 2, vars=VARS, phi: bool = True):
        r = rng.random()
        t = lambda: self.random_term(rng, depth, vars, phi)  # noqa: E731
        d = rng.choice(self.guard_preds)
        if r < 0.3:
            return Eq(t(), t())
        if phi and r < 0.6:
            return ChiApp(d.name, tuple(t() for _ in range(d.arity - 1)))
        return PredApp(d.name, tuple(t() for _ in range(d.arity)))

    def random_formula(self, rng: random.Random, depth: int = 3, vars=VARS, phi: bool = True):
        if depth <= 0 or rng.random() < 0.3:
            return self.random_atomic(rng, 2, vars, phi)
        sub = lambda: self.random_formula(rng, depth - 1, vars, phi)  # noqa: E731
        r = rng.random()
        if r < 0.2:
            return Not(sub())
        return rng.choice((And, Or, Implies))(sub(), sub())

    def random_env(self, rng: random.Random, vars=VARS, general: bool = False) -> Environment:
        """Constant environment, or (``general``) one binding denotations of Skolem terms."""
        env = {}
        for x in vars:
            if general and rng.random() < 0.5:
                env[x] = denote_term(self.random_term(rng, 2, (), True), Environment(), self.model)
            else:
                env[x] = const(rng.randrange(SMALL))
        return Environment(env)

    # -- realizers -------------------------------------------------------------

    def random_realizer(self, rng: random.Random, env: Environment, depth: int = 2, policy=None) -> Realizer:
        r = rng.random()
        if depth <= 0 or r < 0.3:
            if r < 0.1:
                return trivial_realizer()
            d = rng.choice(self.guard_preds)
            alphas = [denote_term(self.random_term(rng, 1), env, self.model) for _ in range(d.arity - 1)]
            return chi_realizer(self.model, d.name, alphas, denote_term(self.random_term(rng, 1), env, self.model))
        pol = policy or rng.choice(POLICIES)
        return merge_lifted(
            self.random_realizer(rng, env, depth - 1, policy), self.random_realizer(rng, env, depth - 1, policy), pol
        )


def _tuples(k: int, bound: int):
    if k == 0:
        yield ()
        return
    for head in range(bound):
        for rest in _tuples(k - 1, bound):
            yield (head, *rest)


_WORLD: World | None = None


def world() -> World:
    global _WORLD
    if _WORLD is None:
        _WORLD = World()
    return _WORLD


# -- results -----------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    samples: int = 0
    failures: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.samples > 0

    def check(self, cond: bool, detail: Callable[[], str] | None = None) -> None:
        self.samples += 1
        if not cond:
            self.failures += 1
            if self.counterexample is None and detail is not None:
                self.counterexample = detail()

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if not self.notes else "; " + "; ".join(self.notes)
        return f"{status} {self.name}: {self.samples - self.failures}/{self.samples} ({self.seconds:.2f}s){extra}"


class _timed:
    def __init__(self, res: SuiteResult):
        self.res = res

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.res

    def __exit__(self, *exc):
        self.res.seconds = time.perf_counter() - self.t0
        return False


def _atoms_within(m: State, *states: State) -> bool:
    return all(any(a in s for s in states) for a in m)


def _maybe_empty(rng, w, **kw) -> State:
    return BOTTOM if rng.random() < 0.1 else w.random_state(rng, **kw)


# -- merge suites ------------------------------------------------------------------


def merge_axioms(rng: random.Random, iters: int, policy: MergePolicy, w: World | None = None) -> SuiteResult:
    """Monoid laws, bottom reflection, union bound and preservation of compatibility/disjointness."""
    w = w or world()
    res = SuiteResult(f"merge-axioms[{policy.value}]")
    with _timed(res):
        for _ in range(iters):
            s1, s2, s3 = (_maybe_empty(rng, w) for _ in range(3))
            m12 = merge(s1, s2, policy)
            ok = (
                merge(m12, s3, policy) == merge(s1, merge(s2, s3, policy), policy)
                and merge(BOTTOM, s1, policy) == s1 == merge(s1, BOTTOM, policy)
                and (bool(m12) or (not s1 and not s2))
                and _atoms_within(m12, s1, s2)
            )
            s = w.random_state(rng)
            c1, c2 = w.random_state(rng, like=s), w.random_state(rng, like=s)
            mc = merge(c1, c2, policy)
            ok = ok and compatible(s, mc)
            d1, d2 = c1.difference(s), c2.difference(s)
            ok = ok and not s.intersection(merge(d1, d2, policy))
            if policy is MergePolicy.MIN:
                ok = ok and m12 == merge(s2, s1, policy)
            res.check(ok, lambda: f"s1={s1!r} s2={s2!r} s3={s3!r}")
        if policy is not MergePolicy.MIN:
            a, b = State([Atom("LT", (1,), 2)]), State([Atom("LT", (1,), 3)])
            if merge(a, b, policy) != merge(b, a, policy):
                res.notes.append(f"non-commutative on {a!r}, {b!r}")
            else:
                res.failures += 1
                res.counterexample = res.counterexample or "no non-commutativity witness"
    return res


# -- monad suites ------------------------------------------------------------------


def _random_kleisli(w: World, rng: random.Random) -> Callable[[int], Individual]:
    """``v -> denotation of a random expression with x bound to v``."""
    if rng.random() < 0.5:
        e, denote = w.random_term(rng, 2), denote_term
    else:
        e, denote = w.random_formula(rng, 2), denote_formula
    env = w.random_env(rng)
    cache: dict = {}

    def f(v):
        ind = cache.get(v)
        if ind is None:
            ind = cache[v] = denote(e, env.extend("x", const(int(v))), w.model)
        return ind

    return f


def state_monad_laws(rng: random.Random, iters: int, w: World | None = None) -> SuiteResult:
    w = w or world()
    res = SuiteResult("state-monad-laws")
    with _timed(res):
        for _ in range(iters):
            f, g = _random_kleisli(w, rng), _random_kleisli(w, rng)
            alpha = denote_term(w.random_term(rng, 2), w.random_env(rng), w.model)
            s = w.random_state(rng)
            x = alpha.eval(s)
            left_unit = extend(f)(unit(x)).eval(s) == f(x).eval(s)
            right_unit = extend(unit)(alpha).eval(s) == alpha.eval(s)
            assoc = extend(g)(extend(f)(alpha)).eval(s) == extend(lambda v: extend(g)(f(v)))(alpha).eval(s)
            res.check(left_unit and right_unit and assoc, lambda: f"alpha={alpha!r} s={s!r}")
    return res


def _random_rkleisli(w: World, rng: random.Random, policy) -> Callable[[int], tuple]:
    e = w.random_term(rng, 2)
    env = w.random_env(rng)
    seed = rng.randrange(1 << 30)
    cache: dict = {}

    def f(v):
        out = cache.get(v)
        if out is None:
            env_v = env.extend("x", const(int(v)))
            r = w.random_realizer(random.Random(seed), env_v, 2, policy)
            out = cache[v] = (denote_term(e, env_v, w.model), r)
        return out

    return f


def _pair_eq(p: tuple, q: tuple, s: State) -> bool:
    return p[0].eval(s) == q[0].eval(s) and p[1].eval(s) == q[1].eval(s)


def realizer_monad_laws(rng: random.Random, iters: int, policy: MergePolicy, w: World | None = None) -> SuiteResult:
    w = w or world()
    res = SuiteResult(f"realizer-monad-laws[{policy.value}]")
    ext = lambda h: r_extend(h, policy)  # noqa: E731
    with _timed(res):
        for _ in range(iters):
            f, g = _random_rkleisli(w, rng, policy), _random_rkleisli(w, rng, policy)
            env = w.random_env(rng)
            pair = (denote_term(w.random_term(rng, 2), env, w.model), w.random_realizer(rng, env, 2, policy))
            s = w.random_state(rng)
            x = pair[0].eval(s)
            ok = (
                _pair_eq(ext(f)(r_unit(x)), f(x), s)
                and _pair_eq(ext(r_unit)(pair), pair, s)
                and _pair_eq(ext(g)(ext(f)(pair)), ext(lambda v: ext(g)(f(v)))(pair), s)
            )
            res.check(ok, lambda: f"pair={pair!r} s={s!r}")
    return res


# -- realizers -------------------------------------------------------------------


def prefix_intersection(rng: random.Random, iters: int, states: int = 50, w: World | None = None) -> SuiteResult:
    """``merged(s)`` is empty exactly when both components are empty."""
    w = w or world()
    res = SuiteResult("prefix-intersection")
    with _timed(res):
        for _ in range(iters):
            env = w.random_env(rng)
            r1, r2 = w.random_realizer(rng, env), w.random_realizer(rng, env)
            policy = rng.choice(POLICIES)
            m = merge_lifted(r1, r2, policy)
            ok = True
            for _ in range(states):
                s = w.random_state(rng)
                ok = ok and ((not m.eval(s)) == (not r1.eval(s) and not r2.eval(s)))
            res.check(ok, lambda: f"r1={r1.tag} r2={r2.tag} policy={policy.value}")
    return res


# -- semantics -----------------------------------------------------------------


KRIPKE_STATES = (State([Atom("LT", (1,), 2)]), State([Atom("LT", (1,), 2), Atom("LT", (0,), 1)]))


def kripke_counterexample(w: World | None = None) -> tuple:
    """Truth of ``chi_LT(x) -> x = succ x`` with ``x = 0`` at the two states above."""
    w = w or world()
    a = Implies(ChiApp("LT", (Var("x"),)), Eq(Var("x"), Succ(Var("x"))))
    v = denote_formula(a, Environment(x=0), w.model)
    return tuple(v.eval(s) for s in KRIPKE_STATES)


_TAUT_TEMPLATES = (
    lambda a, b, c: Or(a, Not(a)),
    lambda a, b, c: Implies(a, a),
    lambda a, b, c: Implies(Implies(Implies(a, b), a), a),
    lambda a, b, c: Implies(And(a, b), a),
    lambda a, b, c: Implies(a, Implies(b, a)),
    lambda a, b, c: Implies(Implies(a, b), Implies(Not(b), Not(a))),
    lambda a, b, c: Implies(Implies(a, Implies(b, c)), Implies(Implies(a, b), Implies(a, c))),
    lambda a, b, c: Implies(Not(And(a, b)), Or(Not(a), Not(b))),
)


def random_axiom(w: World, rng: random.Random, kind: str):
    t = lambda: w.random_term(rng, 2)  # noqa: E731
    if kind == "taut":
        return rng.choice(_TAUT_TEMPLATES)(*(w.random_formula(rng, 1) for _ in range(3)))
    if kind == "pra":
        eqs = [e for d in w.registry if d.name != FRESH for e in w.registry.defining_equations(d.name)]
        pattern, pvars = rng.choice(eqs)
        return substitute_many(pattern, {v: t() for v in pvars})
    if kind == "eq":
        a, b, c = t(), t(), t()
        r = rng.randrange(4)
        if r == 0:
            return Eq(a, a)
        if r == 1:
            return Implies(Eq(a, b), Eq(b, a))
        if r == 2:
            return Implies(And(Eq(a, b), Eq(b, c)), Eq(a, c))
        d = rng.choice(w.guard_preds)
        xs, ys = [t() for _ in range(d.arity)], [t() for _ in range(d.arity)]
        form = rng.randrange(5)
        k = d.arity - 1
        if form == 3:
            hyp = _conj([Eq(u, v) for u, v in zip(xs[:k], ys[:k])])
            return Implies(hyp, Implies(ChiApp(d.name, tuple(xs[:k])), ChiApp(d.name, tuple(ys[:k]))))
        if form == 4:
            hyp = _conj([Eq(u, v) for u, v in zip(xs[:2], ys[:2])])
            return Implies(hyp, Eq(FunApp("add", tuple(xs[:2])), FunApp("add", tuple(ys[:2]))))
        if form == 0:
            hyp = _conj([Eq(u, v) for u, v in zip(xs, ys)])
            return Implies(hyp, Implies(PredApp(d.name, tuple(xs)), PredApp(d.name, tuple(ys))))
        if form == 1:
            hyp = _conj([Eq(u, v) for u, v in zip(xs[:k], ys[:k])])
            return Implies(hyp, Eq(PhiApp(d.name, tuple(xs[:k])), PhiApp(d.name, tuple(ys[:k]))))
        return Implies(Eq(xs[0], ys[0]), Eq(Succ(xs[0]), Succ(ys[0])))
    if kind == "phi":
        d = rng.choice(w.guard_preds)
        return phi_instance(d.name, [t() for _ in range(d.arity - 1)])
    if kind == "chi":
        d = rng.choice(w.guard_preds)
        return chi_instance(d.name, [t() for _ in range(d.arity - 1)], t())
    raise ValueError(kind)


def _conj(parts):
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


AXIOM_CLASSES = ("taut", "pra", "eq", "phi")


def conservativity(rng: random.Random, iters: int, states: int = 20, w: World | None = None) -> SuiteResult:
    """Always-true axiom classes hold everywhere; some (chi) instance fails somewhere."""
    w = w or world()
    res = SuiteResult("conservativity")
    checkers = {
        "taut": tautology_check,
        "pra": lambda a: pra_axiom_check(a, w.registry),
        "eq": eq_axiom_check,
        "phi": lambda a: True,
    }
    with _timed(res):
        for i in range(iters):
            kind = AXIOM_CLASSES[i % len(AXIOM_CLASSES)]
            a = random_axiom(w, rng, kind)
            if not checkers[kind](a):
                res.check(False, lambda: f"generated {kind} instance rejected by checker: {show(a)}")
                continue
            v = denote_formula(a, w.random_env(rng), w.model)
            ok = all(v.eval(w.random_state(rng)) for _ in range(states))
            res.check(ok, lambda: f"{kind} instance false: {show(a)}")
        found = None
        for _ in range(1000):
            a = random_axiom(w, rng, "chi")
            v = denote_formula(a, w.random_env(rng), w.model)
            if any(not v.eval(w.random_state(rng)) for _ in range(states)) or not v.eval(BOTTOM):
                found = a
                break
        res.check(found is not None, lambda: "no false (chi) instance sampled")
        if found is not None:
            res.notes.append(f"false chi instance: {show(found)}")
    return res


def substitution_lemma(rng: random.Random, iters: int, w: World | None = None) -> SuiteResult:
    w = w or world()
    res = SuiteResult("substitution-lemma")
    with _timed(res):
        for i in range(iters):
            env = w.random_env(rng, general=True)
            t = w.random_term(rng, 2)
            x = rng.choice(VARS)
            e = w.random_term(rng, 3) if i % 2 == 0 else w.random_formula(rng, 2)
            denote = denote_term if i % 2 == 0 else denote_formula
            s = w.random_state(rng)
            lhs = denote(substitute(e, x, t), env, w.model).eval(s)
            rhs = denote(e, env.extend(x, denote_term(t, env, w.model)), w.model).eval(s)
            res.check(lhs == rhs, lambda: f"e={show(e)} x={x} t={show(t)} s={s!r}")
    return res


def convergence(rng: random.Random, iters: int, max_len: int = 12, extensions: int = 5, w: World | None = None):
    """Stabilisation along finite chains, stable under adding atoms of an unused predicate."""
    w = w or world()
    res = SuiteResult("convergence")
    with _timed(res):
        for i in range(iters):
            env = w.random_env(rng)
            if i % 2 == 0:
                v = denote_term(w.random_term(rng, 3), env, w.model)
            else:
                v = denote_formula(w.random_formula(rng, 2), env, w.model)
            seq = w.random_chain(rng, rng.randint(1, max_len))
            k = stabilization_point(v, seq)
            stable = v.eval(seq[k])
            ok = 0 <= k < len(seq) and all(v.eval(seq[j]) == stable for j in range(k, len(seq)))
            for _ in range(extensions):
                extra = w.random_state(rng, 4, preds=[FRESH])
                ok = ok and v.eval(seq[-1].union(extra)) == stable
            res.check(ok, lambda: f"v={v!r} seq={list(seq)!r}")
    return res


SUITES = ("merge", "monad", "prefix", "conservativity", "substitution", "convergence")


def run_suites(seed: int, iters: int, names=("merge", "monad", "prefix")) -> list:
    rng = random.Random(seed)
    out = []
    for name in names:
        if name == "merge":
            out += [merge_axioms(rng, iters, p) for p in POLICIES]
        elif name == "monad":
            out.append(state_monad_laws(rng, iters))
            out += [realizer_monad_laws(rng, max(1, iters // 5), p) for p in POLICIES]
        elif name == "prefix":
            out.append(prefix_intersection(rng, max(1, iters // 10)))
        elif name == "conservativity":
            out.append(conservativity(rng, iters))
        elif name == "substitution":
            out.append(substitution_lemma(rng, iters))
        elif name == "convergence":
            out.append(convergence(rng, iters))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
