"""Reference interpreter for flat primitive recursive code."""

from __future__ import annotations

from .errors import BudgetExhausted

OP_VAR, OP_ZERO, OP_SUCC, OP_CALL, OP_REC = range(5)


class Machine:
    """Evaluates definitions of a compiled registry with a step budget.

    Works on arbitrary-precision integers.  ``steps`` holds the count used by
    the most recent ``call``.
    """

    def __init__(self, code):
        self.code = code
        self.steps = 0
        self._budget = 0

    def call(self, fidx: int, args, budget: int) -> int:
        code = self.code
        if len(args) != code.nparams[fidx]:
            raise ValueError("wrong number of arguments")
        self.steps = 0
        self._budget = budget
        frame = [int(x) for x in args] + [0] * (code.nslots[fidx] - code.nparams[fidx])
        return self._ev(code.body[fidx], frame)

    def _ev(self, node: int, frame: list) -> int:
        self.steps += 1
        if self.steps > self._budget:
            raise BudgetExhausted(f"step budget of {self._budget} exhausted")
        code = self.code
        op = code.op[node]
        if op == OP_VAR:
            return frame[code.a[node]]
        if op == OP_ZERO:
            return 0
        if op == OP_SUCC:
            return self._ev(code.a[node], frame) + 1
        if op == OP_CALL:
            f = code.a[node]
            start = code.b[node]
            new = [self._ev(code.argpool[i], frame) for i in range(start, start + code.c[node])]
            new.extend([0] * (code.nslots[f] - code.nparams[f]))
            return self._ev(code.body[f], new)
        # OP_REC
        n = self._ev(code.a[node], frame)
        acc = self._ev(code.b[node], frame)
        step, ks = code.c[node], code.d[node]
        for k in range(n):
            frame[ks] = k
            frame[ks + 1] = acc
            acc = self._ev(step, frame)
        return acc
