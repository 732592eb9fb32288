"""Reading and printing program files.

Top-level forms::

    (deffun name (params...) schema)
    (defpred name (params...) schema)
    (term name t)
    (formula name A)
    (proof name p)

Schema expressions are terms over the parameters plus
``(rec count base (k acc) step)``.  Terms: variables, integer numerals,
``(succ t)``, ``(f t...)``, ``(phi P t...)``.  Formulas: ``(P t...)``,
``(= t u)``, ``(chi P t...)``, ``(not A)``, ``(and A B)``, ``(or A B)``,
``(implies A B)`` (also ``->``), or the name of an earlier formula.
Proofs: ``(taut A)``, ``(pra A)``, ``(eqax A)``, ``(chi P (t...) u)``,
``(phiax P (t...))``, ``(mp p q)``, ``(sub p x t)``, ``(ind base step y)``,
or the name of an earlier proof.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ArityError, DuplicateDeclaration, Em1Error, ParseError, UndeclaredName
from .primrec import FUNCTION, PREDICATE, PrimRecDef, Rec, Registry, show_schema
from .proofs import MP, ChiAxiom, EqAxiom, Ind, PhiAxiom, PraAxiom, Sub, TautAxiom
from .sexpr import Num, SList, Sym, read_all, where
from .standard import StandardModel
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
)

MAX_NUMERAL = 512

RESERVED = frozenset(
    "succ phi chi not and or implies -> = rec deffun defpred term formula proof "
    "taut pra eqax phiax mp sub ind".split()
)
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'.\-]*$")


@dataclass
class Program:
    registry: Registry = field(default_factory=Registry)
    terms: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)
    proofs: dict = field(default_factory=dict)

    @cached_property
    def model(self) -> StandardModel:
        return StandardModel(self.registry)

    def show(self) -> str:
        lines = []
        for d in self.registry:
            kw = "defpred" if d.is_predicate else "deffun"
            lines.append(f"({kw} {d.name} ({' '.join(d.params)}) {show_schema(d.body)})")
        for name, t in self.terms.items():
            lines.append(f"(term {name} {show(t)})")
        for name, a in self.formulas.items():
            lines.append(f"(formula {name} {show(a)})")
        for name, p in self.proofs.items():
            lines.append(f"(proof {name} {show_proof(p)})")
        return "\n".join(lines) + ("\n" if lines else "")


def show_proof(p) -> str:
    if isinstance(p, TautAxiom):
        return f"(taut {show(p.formula)})"
    if isinstance(p, PraAxiom):
        return f"(pra {show(p.formula)})"
    if isinstance(p, EqAxiom):
        return f"(eqax {show(p.formula)})"
    if isinstance(p, ChiAxiom):
        return f"(chi {p.pred} ({' '.join(map(show, p.args))}) {show(p.witness)})"
    if isinstance(p, PhiAxiom):
        return f"(phiax {p.pred} ({' '.join(map(show, p.args))}))"
    if isinstance(p, MP):
        return f"(mp {show_proof(p.major)} {show_proof(p.minor)})"
    if isinstance(p, Sub):
        return f"(sub {show_proof(p.proof)} {p.var} {show(p.term)})"
    if isinstance(p, Ind):
        return f"(ind {show_proof(p.base)} {show_proof(p.step)} {p.var})"
    raise TypeError(f"not a proof: {p!r}")


def parse_program(source: str) -> Program:
    return _Reader().read(source)


def load_program(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read())


class _Reader:
    def __init__(self):
        self.prog = Program()

    def fail(self, node, msg, cls=ParseError):
        raise cls(msg, *where(node))

    def read(self, source: str) -> Program:
        for form in read_all(source):
            if not isinstance(form, SList) or not form.items or not isinstance(form.head, Sym):
                self.fail(form, "expected a top-level form like (deffun ...)")
            kw = form.head.name
            if kw in ("deffun", "defpred"):
                self.definition(form, PREDICATE if kw == "defpred" else FUNCTION)
            elif kw in ("term", "formula", "proof"):
                self.named(form, kw)
            else:
                self.fail(form.head, f"unknown top-level form {kw!r}")
        return self.prog

    def ident(self, node, what="name") -> str:
        if not isinstance(node, Sym) or not _IDENT.match(node.name) or node.name in RESERVED:
            self.fail(node, f"invalid {what}: {_text(node)}")
        return node.name

    def arity(self, form, n, usage):
        if len(form) != n:
            self.fail(form, f"expected {usage}", ArityError)

    # -- definitions -----------------------------------------------------

    def definition(self, form, kind):
        self.arity(form, 4, f"({form.head.name} name (params...) body)")
        name = self.ident(form[1])
        if not isinstance(form[2], SList):
            self.fail(form[2], "parameter list must be parenthesised")
        params = tuple(self.ident(p, "parameter") for p in form[2])
        body = self.schema(form[3])
        self.prog.registry.add(PrimRecDef(name, params, body, kind), where(form))

    def schema(self, node):
        if isinstance(node, Num):
            return self.numeral(node)
        if isinstance(node, Sym):
            return Var(self.ident(node, "variable"))
        if not isinstance(node, SList) or not node.items or not isinstance(node.head, Sym):
            self.fail(node, f"bad schema expression: {_text(node)}")
        h = node.head.name
        if h == "succ":
            self.arity(node, 2, "(succ e)")
            return Succ(self.schema(node[1]))
        if h == "rec":
            self.arity(node, 5, "(rec count base (k acc) step)")
            binders = node[3]
            if not isinstance(binders, SList) or len(binders) != 2:
                self.fail(binders, "rec binders must be (k acc)")
            return Rec(
                self.schema(node[1]),
                self.schema(node[2]),
                self.ident(binders[0], "binder"),
                self.ident(binders[1], "binder"),
                self.schema(node[4]),
            )
        return FunApp(self.ident(node.head, "function name"), tuple(self.schema(a) for a in node[1:]))

    # -- named objects ---------------------------------------------------

    def named(self, form, kw):
        self.arity(form, 3, f"({kw} name body)")
        name = self.ident(form[1])
        table = {"term": self.prog.terms, "formula": self.prog.formulas, "proof": self.prog.proofs}[kw]
        if name in table:
            self.fail(form[1], f"{kw} {name!r} is already declared", DuplicateDeclaration)
        parse = {"term": self.term, "formula": self.formula, "proof": self.proof}[kw]
        table[name] = parse(form[2])

    def numeral(self, node):
        if node.value > MAX_NUMERAL:
            self.fail(node, f"numeral {node.value} too large (limit {MAX_NUMERAL}); bind it with --env")
        return numeral(node.value)

    def checked(self, node, e):
        self.prog.registry.check_expr(e, where(node))
        return e

    def term(self, node):
        if isinstance(node, Num):
            return self.numeral(node)
        if isinstance(node, Sym):
            return Var(self.ident(node, "variable"))
        if not isinstance(node, SList) or not node.items or not isinstance(node.head, Sym):
            self.fail(node, f"bad term: {_text(node)}")
        h = node.head.name
        if h == "succ":
            self.arity(node, 2, "(succ t)")
            return Succ(self.term(node[1]))
        if h == "phi":
            if len(node) < 2:
                self.fail(node, "expected (phi P t...)", ArityError)
            pred = self.ident(node[1], "predicate name")
            return self.checked(node, PhiApp(pred, tuple(self.term(a) for a in node[2:])))
        name = self.ident(node.head, "function name")
        return self.checked(node, FunApp(name, tuple(self.term(a) for a in node[1:])))

    def formula(self, node):
        if isinstance(node, Sym):
            try:
                return self.prog.formulas[node.name]
            except KeyError:
                self.fail(node, f"unknown formula {node.name!r}", UndeclaredName)
        if not isinstance(node, SList) or not node.items or not isinstance(node.head, Sym):
            self.fail(node, f"bad formula: {_text(node)}")
        h = node.head.name
        if h == "=":
            self.arity(node, 3, "(= t u)")
            return Eq(self.term(node[1]), self.term(node[2]))
        if h == "chi":
            if len(node) < 2:
                self.fail(node, "expected (chi P t...)", ArityError)
            pred = self.ident(node[1], "predicate name")
            return self.checked(node, ChiApp(pred, tuple(self.term(a) for a in node[2:])))
        if h == "not":
            self.arity(node, 2, "(not A)")
            return Not(self.formula(node[1]))
        if h in ("and", "or", "implies", "->"):
            if len(node) < 3:
                self.fail(node, f"expected ({h} A B ...)", ArityError)
            cls = {"and": And, "or": Or}.get(h, Implies)
            parts = [self.formula(a) for a in node[1:]]
            out = parts[-1]
            for p in reversed(parts[:-1]):
                out = cls(p, out)
            return out
        name = self.ident(node.head, "predicate name")
        return self.checked(node, PredApp(name, tuple(self.term(a) for a in node[1:])))

    def term_list(self, node):
        if not isinstance(node, SList):
            self.fail(node, "expected a parenthesised list of terms")
        return tuple(self.term(a) for a in node)

    def proof(self, node):
        if isinstance(node, Sym):
            try:
                return self.prog.proofs[node.name]
            except KeyError:
                self.fail(node, f"unknown proof {node.name!r}", UndeclaredName)
        if not isinstance(node, SList) or not node.items or not isinstance(node.head, Sym):
            self.fail(node, f"bad proof: {_text(node)}")
        h = node.head.name
        if h in ("taut", "pra", "eqax"):
            self.arity(node, 2, f"({h} A)")
            cls = {"taut": TautAxiom, "pra": PraAxiom, "eqax": EqAxiom}[h]
            return cls(self.formula(node[1]))
        if h == "chi":
            self.arity(node, 4, "(chi P (t...) u)")
            pred = self.ident(node[1], "predicate name")
            p = ChiAxiom(pred, self.term_list(node[2]), self.term(node[3]))
            self.checked(node, PredApp(pred, p.args + (p.witness,)))
            return p
        if h == "phiax":
            self.arity(node, 3, "(phiax P (t...))")
            pred = self.ident(node[1], "predicate name")
            p = PhiAxiom(pred, self.term_list(node[2]))
            self.checked(node, ChiApp(pred, p.args))
            return p
        if h == "mp":
            self.arity(node, 3, "(mp major minor)")
            return MP(self.proof(node[1]), self.proof(node[2]))
        if h == "sub":
            self.arity(node, 4, "(sub p x t)")
            return Sub(self.proof(node[1]), self.ident(node[2], "variable"), self.term(node[3]))
        if h == "ind":
            self.arity(node, 4, "(ind base step y)")
            return Ind(self.proof(node[1]), self.proof(node[2]), self.ident(node[3], "variable"))
        self.fail(node.head, f"unknown proof rule {h!r}")


def _text(node) -> str:
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, SList):
        return "(" + " ".join(_text(x) for x in node) + ")"
    return repr(node)


__all__ = ["Program", "parse_program", "load_program", "show_proof", "Em1Error"]
