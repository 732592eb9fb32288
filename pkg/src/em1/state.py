"""States of knowledge: finite consistent sets of true atoms ``<P, args, n>``."""

from __future__ import annotations

import json
from typing import Iterable, NamedTuple

from .errors import IncompatibleStates, Inconsistency, ModelViolation


class Atom(NamedTuple):
    pred: str
    args: tuple
    witness: int

    @property
    def key(self) -> tuple:
        return (self.pred, self.args)

    def __str__(self):
        return f"<{self.pred},{list(self.args)},{self.witness}>"


def atom(pred: str, args, witness: int) -> Atom:
    return Atom(pred, tuple(int(a) for a in args), int(witness))


class State:
    """Immutable set of atoms with at most one witness per ``(pred, args)``.

    The model condition needs an oracle, so it is enforced by
    :func:`try_insert` and :func:`state_from_json`; the constructor only
    enforces consistency.
    """

    __slots__ = ("atoms", "_index", "_hash")

    def __init__(self, atoms: Iterable[Atom] = ()):
        index: dict = {}
        for a in atoms:
            a = a if isinstance(a, Atom) else atom(*a)
            old = index.get(a.key)
            if old is not None and old != a.witness:
                raise Inconsistency(f"conflicting witnesses {old} and {a.witness} for {a.pred}{list(a.args)}")
            index[a.key] = a.witness
        self._index = index
        self.atoms = tuple(sorted(Atom(p, m, n) for (p, m), n in index.items()))
        self._hash = None

    @classmethod
    def _trusted(cls, index: dict) -> State:
        s = cls.__new__(cls)
        s._index = index
        s.atoms = tuple(sorted(Atom(p, m, n) for (p, m), n in index.items()))
        s._hash = None
        return s

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __bool__(self):
        return bool(self.atoms)

    def __contains__(self, a):
        return self._index.get((a[0], tuple(a[1])), None) == a[2]

    def __eq__(self, other):
        return isinstance(other, State) and self._index == other._index

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.atoms)
        return self._hash

    def __repr__(self):
        return "{" + ", ".join(map(str, self.atoms)) + "}"

    def keys(self):
        return self._index.keys()

    def witness(self, pred: str, args) -> int | None:
        return self._index.get((pred, tuple(args)))

    def issubset(self, other: State) -> bool:
        oi = other._index
        return len(self._index) <= len(oi) and all(oi.get(k) == n for k, n in self._index.items())

    def intersection(self, other: State) -> State:
        oi = other._index
        return State._trusted({k: n for k, n in self._index.items() if oi.get(k) == n})

    def difference(self, other: State) -> State:
        oi = other._index
        return State._trusted({k: n for k, n in self._index.items() if oi.get(k) != n})

    def without_keys(self, keys) -> State:
        """Drop every atom whose ``(pred, args)`` is in ``keys``."""
        return State._trusted({k: n for k, n in self._index.items() if k not in keys})

    def union(self, other: State) -> State:
        if not compatible(self, other):
            raise IncompatibleStates(f"states {self!r} and {other!r} are incompatible")
        return State._trusted({**self._index, **other._index})


BOTTOM = State()


def leq(s: State, t: State) -> bool:
    return s.issubset(t)


def compatible(s: State, t: State) -> bool:
    small, big = (s, t) if len(s) <= len(t) else (t, s)
    bi = big._index
    return all(bi.get(k, n) == n for k, n in small._index.items())


def join(s: State, t: State) -> State:
    return s.union(t)


def lookup_witness(s: State, pred: str, args) -> int | None:
    return s.witness(pred, args)


def try_insert(model, s: State, a) -> State:
    """``s`` plus the atom ``a``, checked against the standard model ``model``."""
    a = a if isinstance(a, Atom) else atom(*a)
    if not model.eval_pred(a.pred, list(a.args) + [a.witness]):
        raise ModelViolation(f"{a.pred}{list(a.args) + [a.witness]} is false in the standard model")
    old = s.witness(a.pred, a.args)
    if old is not None and old != a.witness:
        raise Inconsistency(f"{a.pred}{list(a.args)} already has witness {old}, cannot add {a.witness}")
    if old is not None:
        return s
    return State._trusted({**s._index, a.key: a.witness})


def check_model(model, s: State) -> State:
    for a in s:
        if not model.eval_pred(a.pred, list(a.args) + [a.witness]):
            raise ModelViolation(f"{a.pred}{list(a.args) + [a.witness]} is false in the standard model")
    return s


def state_to_obj(s: State) -> dict:
    return {"atoms": [{"pred": a.pred, "args": list(a.args), "witness": a.witness} for a in s]}


def state_to_json(s: State) -> str:
    return json.dumps(state_to_obj(s), separators=(",", ":"))


def state_from_obj(obj, model=None) -> State:
    try:
        atoms = [atom(d["pred"], d["args"], d["witness"]) for d in obj["atoms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state JSON: {exc}") from None
    if any(n < 0 for a in atoms for n in (*a.args, a.witness)):
        raise ValueError("malformed state JSON: negative number")
    s = State(atoms)
    return s if model is None else check_model(model, s)


def state_from_json(text: str, model=None) -> State:
    return state_from_obj(json.loads(text), model)
