from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from em1.errors import IncompatibleStates, Inconsistency, ModelViolation
from em1.laws import world
from em1.state import (
    BOTTOM,
    Atom,
    State,
    compatible,
    join,
    leq,
    lookup_witness,
    state_from_json,
    state_to_json,
    try_insert,
)

LT12 = Atom("LT", (1,), 2)
LT13 = Atom("LT", (1,), 3)
LT01 = Atom("LT", (0,), 1)

seeds = st.integers(0, 2**32 - 1)


def rand_state(seed, **kw):
    return world().random_state(random.Random(seed), **kw)


def test_try_insert(w):
    assert try_insert(w.model, BOTTOM, LT12) == State([LT12])
    with pytest.raises(ModelViolation):
        try_insert(w.model, BOTTOM, Atom("LT", (2,), 1))
    with pytest.raises(Inconsistency):
        try_insert(w.model, State([LT12]), LT13)
    assert try_insert(w.model, State([LT12]), LT12) == State([LT12])


def test_order_examples():
    s = State([LT12])
    assert leq(BOTTOM, s) and leq(s, s)
    assert not leq(s, State([LT01]))
    assert compatible(s, BOTTOM)
    assert not compatible(s, State([LT13]))
    assert compatible(s, State([LT01]))


def test_join_examples():
    s = State([LT12])
    assert join(s, BOTTOM) == s
    assert join(s, State([LT01])) == State([LT12, LT01])
    with pytest.raises(IncompatibleStates):
        join(s, State([LT13]))


def test_lookup_examples():
    s = State([LT12])
    assert lookup_witness(BOTTOM, "LT", [1]) is None
    assert lookup_witness(s, "LT", [1]) == 2
    assert lookup_witness(s, "LT", [0]) is None


def test_constructor_rejects_conflicts():
    with pytest.raises(Inconsistency):
        State([LT12, LT13])


@given(seeds, seeds)
def test_join_is_least_upper_bound(a, b):
    s = rand_state(a)
    t = rand_state(b, like=s)
    j = join(s, t)
    assert leq(s, j) and leq(t, j)
    u = rand_state(b + 1, like=j).union(j)
    assert leq(j, u)


@given(seeds, seeds, seeds)
def test_partial_order(a, b, c):
    s, t, u = rand_state(a), rand_state(b), rand_state(c)
    if leq(s, t) and leq(t, s):
        assert s == t
    if leq(s, t) and leq(t, u):
        assert leq(s, u)


@given(seeds, st.randoms(use_true_random=False))
def test_downward_closed(a, r):
    s = rand_state(a)
    sub = State([x for x in s if r.random() < 0.5])
    assert leq(sub, s)


@given(seeds)
def test_json_round_trip_is_canonical(a):
    s = rand_state(a)
    text = state_to_json(s)
    assert state_from_json(text, world().model) == s
    assert state_to_json(State(reversed(s.atoms))) == text


def test_json_format():
    s = State([LT12, LT01])
    assert state_to_json(s) == (
        '{"atoms":[{"pred":"LT","args":[0],"witness":1},{"pred":"LT","args":[1],"witness":2}]}'
    )


def test_json_load_checks_model(w):
    with pytest.raises(ModelViolation):
        state_from_json('{"atoms":[{"pred":"LT","args":[2],"witness":1}]}', w.model)
    with pytest.raises(ValueError):
        state_from_json('{"atoms":[{"pred":"LT"}]}')
