"""Flat code for primitive recursive definitions and backend selection.

Both backends interpret the same flat node arrays and charge one step per
node visit, so budgets and results agree exactly.  The compiled backend is
used when it imported and ``EM1_PURE_PYTHON`` is unset.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .primrec import Rec, Registry
from .syntax import FunApp, Succ, Var, Zero

OP_VAR, OP_ZERO, OP_SUCC, OP_CALL, OP_REC = range(5)


@dataclass
class FlatCode:
    """Struct-of-arrays encoding of every definition in a registry.

    Node ``i`` has opcode ``op[i]`` and operands ``a[i]..d[i]``:

    * VAR: ``a`` = frame slot
    * SUCC: ``a`` = child node
    * CALL: ``a`` = callee, ``b`` = start in ``argpool``, ``c`` = argument count
    * REC: ``a`` = count node, ``b`` = base node, ``c`` = step node,
      ``d`` = slot of the index (the accumulator lives at ``d + 1``)
    """

    op: list = field(default_factory=list)
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    c: list = field(default_factory=list)
    d: list = field(default_factory=list)
    argpool: list = field(default_factory=list)
    body: list = field(default_factory=list)
    nparams: list = field(default_factory=list)
    nslots: list = field(default_factory=list)

    def emit(self, op, a=0, b=0, c=0, d=0) -> int:
        self.op.append(op)
        self.a.append(a)
        self.b.append(b)
        self.c.append(c)
        self.d.append(d)
        return len(self.op) - 1


def compile_registry(reg: Registry) -> FlatCode:
    code = FlatCode()
    index = {d.name: d.index for d in reg}
    for d in reg:
        slots = {p: i for i, p in enumerate(d.params)}
        depth_max = [0]

        def comp(e, scope, depth):
            if isinstance(e, Var):
                return code.emit(OP_VAR, scope[e.name])
            if isinstance(e, Zero):
                return code.emit(OP_ZERO)
            if isinstance(e, Succ):
                return code.emit(OP_SUCC, comp(e.arg, scope, depth))
            if isinstance(e, FunApp):
                kids = [comp(x, scope, depth) for x in e.args]
                start = len(code.argpool)
                code.argpool.extend(kids)
                return code.emit(OP_CALL, index[e.fun], start, len(kids))
            if isinstance(e, Rec):
                n = comp(e.count, scope, depth)
                base = comp(e.base, scope, depth)
                kslot = len(d.params) + 2 * depth
                depth_max[0] = max(depth_max[0], depth + 1)
                inner = dict(scope)
                inner[e.k] = kslot
                inner[e.acc] = kslot + 1
                step = comp(e.step, inner, depth + 1)
                return code.emit(OP_REC, n, base, step, kslot)
            raise TypeError(f"not a schema expression: {e!r}")

        code.body.append(comp(d.body, slots, 0))
        code.nparams.append(len(d.params))
        code.nslots.append(len(d.params) + 2 * depth_max[0])
    return code


from ._kernel_py import Machine as PyMachine  # noqa: E402

try:
    from ._kernel import Machine as CMachine
except ImportError:  # extension not built
    CMachine = None


def backend_name() -> str:
    if CMachine is not None and not os.environ.get("EM1_PURE_PYTHON"):
        return "cython"
    return "python"


def make_machine(code: FlatCode, backend: str | None = None):
    backend = backend or backend_name()
    if backend == "cython":
        if CMachine is None:
            raise RuntimeError("compiled kernel is not available")
        return CMachine(code)
    return PyMachine(code)
