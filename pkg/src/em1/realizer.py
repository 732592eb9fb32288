"""Merges, state-transforming realizers and the prefix-point learning loop."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable

from .errors import ArityError, CapExceeded, ContractViolation
from .semantics import Individual, const
from .state import BOTTOM, State, compatible, state_to_obj

DEFAULT_CAP = 10_000


class MergePolicy(enum.Enum):
    FIRST = "first"
    OVERRIDE = "override"
    MIN = "min"

    @classmethod
    def parse(cls, x) -> MergePolicy:
        return x if isinstance(x, cls) else cls(str(x).lower())


POLICIES = tuple(MergePolicy)


def merge(s1: State, s2: State, policy: MergePolicy = MergePolicy.OVERRIDE) -> State:
    policy = MergePolicy.parse(policy)
    if policy is MergePolicy.FIRST:
        return s1 if s1 else s2
    if not s1:
        return s2
    if not s2:
        return s1
    if policy is MergePolicy.OVERRIDE:
        return State._trusted({**s2.without_keys(s1.keys())._index, **s1._index})
    best = dict(s1._index)
    for k, n in s2._index.items():
        if k not in best or n < best[k]:
            best[k] = n
    return State._trusted(best)


TRIVIAL_TAG = ("trivial",)


@dataclass(frozen=True)
class Realizer:
    """A map from states to states plus a structural tag for printing and tests."""

    fn: Callable[[State], State]
    tag: tuple = ("opaque",)

    def eval(self, s: State) -> State:
        return self.fn(s)

    @property
    def is_trivial(self) -> bool:
        return self.tag == TRIVIAL_TAG


_TRIVIAL = Realizer(lambda _s: BOTTOM, TRIVIAL_TAG)


def trivial_realizer() -> Realizer:
    return _TRIVIAL


def chi_realizer(model, pred: str, alphas, beta: Individual) -> Realizer:
    """Adds ``<P, alphas(s), beta(s)>`` when it is true and ``P, alphas(s)`` has no witness yet."""
    alphas = tuple(alphas)
    d = model.registry[pred]
    if not d.is_predicate or d.arity != len(alphas) + 1:
        raise ArityError(f"{pred} takes {d.arity - 1} guard argument(s), got {len(alphas)}")
    fns = [a.fn for a in alphas]
    bfn = beta.fn

    def run(s: State) -> State:
        m = tuple(f(s) for f in fns)
        if s.witness(pred, m) is not None:
            return BOTTOM
        n = bfn(s)
        if not model.eval_pred(pred, [*m, n]):
            return BOTTOM
        return State._trusted({(pred, m): n})

    return Realizer(run, ("chi", pred, tuple(a.desc for a in alphas), beta.desc))


def merge_lifted(r1: Realizer, r2: Realizer, policy: MergePolicy = MergePolicy.OVERRIDE) -> Realizer:
    """Pointwise merge; a trivial side is dropped since bottom is the unit."""
    policy = MergePolicy.parse(policy)
    if r1.is_trivial:
        return r2
    if r2.is_trivial:
        return r1
    f1, f2 = r1.fn, r2.fn
    return Realizer(lambda s: merge(f1(s), f2(s), policy), ("merged", r1.tag, r2.tag))


def induction_realizer(
    base: Realizer,
    step: Callable[[int], Realizer],
    beta: Individual,
    policy: MergePolicy = MergePolicy.OVERRIDE,
) -> Realizer:
    """``base(s)`` merged with ``step(0)(s) (x) ... (x) step(beta(s)-1)(s)``."""
    policy = MergePolicy.parse(policy)
    cache: dict[int, Realizer] = {}

    def step_at(i: int) -> Realizer:
        r = cache.get(i)
        if r is None:
            r = cache[i] = step(i)
        return r

    def run(s: State) -> State:
        acc = BOTTOM
        for i in range(beta.fn(s)):
            acc = merge(acc, step_at(i).fn(s), policy)
        return merge(base.fn(s), acc, policy)

    return Realizer(run, ("induction", base.tag, step_at(0).tag, beta.desc))


def check_realizer_contract(r: Realizer, s: State) -> bool:
    out = r.eval(s)
    return compatible(out, s) and not out.intersection(s)


# -- learning loop --------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    state: State
    added: State


@dataclass(frozen=True)
class LearningTrace:
    steps: tuple

    @property
    def final_state(self) -> State:
        return self.steps[-1].state

    @property
    def iterations(self) -> int:
        return len(self.steps) - 1

    def __len__(self):
        return len(self.steps)

    def to_obj(self) -> list:
        return [
            {"step_index": i, "state": state_to_obj(t.state), "added_atoms": state_to_obj(t.added)["atoms"]}
            for i, t in enumerate(self.steps)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True) + "\n"


def find_prefix_point(r: Realizer, s0: State = BOTTOM, cap: int = DEFAULT_CAP) -> LearningTrace:
    """Iterate ``s := s join r(s)`` until ``r(s)`` is empty, checking the contract each time."""
    steps = []
    s = s0
    while True:
        out = r.eval(s)
        if not compatible(out, s) or out.intersection(s):
            raise ContractViolation(f"realizer output {out!r} clashes with state {s!r} at step {len(steps)}")
        steps.append(TraceStep(s, out))
        if not out:
            return LearningTrace(tuple(steps))
        if len(steps) > cap:
            raise CapExceeded(f"no prefix point within {cap} iterations")
        s = s.union(out)


# -- realizer monad on (individual, realizer) pairs ------------------------------------------


def r_unit(x) -> tuple:
    return (const(x), _TRIVIAL)


def r_extend(f: Callable[[object], tuple], policy: MergePolicy = MergePolicy.OVERRIDE):
    """Lift ``f: value -> (individual, realizer)`` to pairs."""
    policy = MergePolicy.parse(policy)

    def lifted(pair: tuple) -> tuple:
        alpha, r = pair
        value = Individual(lambda s: f(alpha.fn(s))[0].fn(s), f"ext1({alpha.desc})")
        learn = Realizer(lambda s: f(alpha.fn(s))[1].fn(s), ("ext2", alpha.desc))
        return (value, merge_lifted(r, learn, policy))

    return lifted
