# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled interpreter for flat primitive recursive code.

Runs on int64.  Every value is either an argument, zero, or reached from a
smaller value by ``succ`` (one step each), so values never exceed
``max(args) + budget``; calls where that bound could overflow are handed to
the pure-Python machine, as are calls whose frames exceed the value stack.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int64_t

from ._kernel_py import Machine as _PyMachine
from .errors import BudgetExhausted

cdef enum:
    OP_VAR = 0
    OP_ZERO = 1
    OP_SUCC = 2
    OP_CALL = 3
    OP_REC = 4
    STACK_SLOTS = 1 << 16

cdef int64_t SAFE_LIMIT = (<int64_t>1) << 62
cdef int64_t E_BUDGET = -1
cdef int64_t E_STACK = -2


cdef int* _int_array(list xs) except NULL:
    cdef Py_ssize_t n = len(xs)
    cdef int* out = <int*> PyMem_Malloc((n if n > 0 else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = xs[i]
    return out


cdef class Machine:
    cdef int* op
    cdef int* a
    cdef int* b
    cdef int* c
    cdef int* d
    cdef int* argpool
    cdef int* body
    cdef int* nparams
    cdef int* nslots
    cdef int64_t* stack
    cdef int64_t sp
    cdef int64_t steps_
    cdef int64_t budget_
    cdef object py

    def __cinit__(self, code):
        self.op = _int_array(code.op)
        self.a = _int_array(code.a)
        self.b = _int_array(code.b)
        self.c = _int_array(code.c)
        self.d = _int_array(code.d)
        self.argpool = _int_array(code.argpool)
        self.body = _int_array(code.body)
        self.nparams = _int_array(code.nparams)
        self.nslots = _int_array(code.nslots)
        self.stack = <int64_t*> PyMem_Malloc(STACK_SLOTS * sizeof(int64_t))
        if self.stack == NULL:
            raise MemoryError()
        self.py = _PyMachine(code)

    def __dealloc__(self):
        PyMem_Free(self.op)
        PyMem_Free(self.a)
        PyMem_Free(self.b)
        PyMem_Free(self.c)
        PyMem_Free(self.d)
        PyMem_Free(self.argpool)
        PyMem_Free(self.body)
        PyMem_Free(self.nparams)
        PyMem_Free(self.nslots)
        PyMem_Free(self.stack)

    @property
    def steps(self):
        return self.steps_

    def call(self, int fidx, args, budget):
        cdef int n = self.nparams[fidx]
        if len(args) != n:
            raise ValueError("wrong number of arguments")
        if budget >= SAFE_LIMIT or any(x < 0 or x >= SAFE_LIMIT - budget for x in args):
            return self._fallback(fidx, args, budget)
        cdef int i
        cdef int slots = self.nslots[fidx]
        for i in range(slots):
            self.stack[i] = args[i] if i < n else 0
        self.sp = slots
        self.steps_ = 0
        self.budget_ = budget
        cdef int64_t r = self._ev(self.body[fidx], self.stack)
        if r == E_BUDGET:
            raise BudgetExhausted(f"step budget of {budget} exhausted")
        if r == E_STACK:
            return self._fallback(fidx, args, budget)
        return r

    def _fallback(self, fidx, args, budget):
        try:
            return self.py.call(fidx, args, budget)
        finally:
            self.steps_ = self.py.steps

    cdef int64_t _ev(self, int node, int64_t* frame) noexcept:
        cdef int64_t v, n, acc, k
        cdef int f, i, start, cnt, ks, step, slots
        cdef int64_t* callee
        self.steps_ += 1
        if self.steps_ > self.budget_:
            return E_BUDGET
        cdef int o = self.op[node]
        if o == OP_VAR:
            return frame[self.a[node]]
        if o == OP_ZERO:
            return 0
        if o == OP_SUCC:
            v = self._ev(self.a[node], frame)
            return v + 1 if v >= 0 else v
        if o == OP_CALL:
            f = self.a[node]
            start = self.b[node]
            cnt = self.c[node]
            slots = self.nslots[f]
            if self.sp + slots > STACK_SLOTS:
                return E_STACK
            callee = self.stack + self.sp
            self.sp += slots
            for i in range(cnt):
                v = self._ev(self.argpool[start + i], frame)
                if v < 0:
                    self.sp -= slots
                    return v
                callee[i] = v
            for i in range(cnt, slots):
                callee[i] = 0
            v = self._ev(self.body[f], callee)
            self.sp -= slots
            return v
        # OP_REC
        n = self._ev(self.a[node], frame)
        if n < 0:
            return n
        acc = self._ev(self.b[node], frame)
        if acc < 0:
            return acc
        step = self.c[node]
        ks = self.d[node]
        k = 0
        while k < n:
            frame[ks] = k
            frame[ks + 1] = acc
            acc = self._ev(step, frame)
            if acc < 0:
                return acc
            k += 1
        return acc
