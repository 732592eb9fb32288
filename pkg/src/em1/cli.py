"""Command-line front end: ``em1 {check,eval,run,laws}``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import Em1Error
from .extraction import extract_realizer, extract_witness, forces_check
from .laws import SUITES, run_suites
from .program import load_program
from .proofs import check_proof
from .realizer import DEFAULT_CAP, MergePolicy
from .semantics import Environment, denote_formula, denote_term
from .state import BOTTOM, state_from_obj, state_to_json
from .syntax import show


def parse_env(text: str | None) -> dict:
    env = {}
    if not text:
        return env
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name or not value.strip().isdigit():
            raise ValueError(f"bad --env binding {part!r}; expected name=natural")
        env[name] = int(value)
    return env


def load_state(text: str | None, model):
    if text is None or text.strip() in ("", "empty"):
        return BOTTOM
    if text.startswith("@") or os.path.isfile(text):
        with open(text.lstrip("@"), encoding="utf-8") as fh:
            text = fh.read()
    return state_from_obj(json.loads(text), model)


def _lookup(table: dict, name: str, kind: str):
    try:
        return table[name]
    except KeyError:
        known = ", ".join(table) or "none"
        raise Em1Error(f"no {kind} named {name!r} (known: {known})") from None


def cmd_check(args) -> int:
    prog = load_program(args.file)
    for name, p in prog.proofs.items():
        print(f"{name}: {show(check_proof(p, prog.registry))}")
    if not prog.proofs:
        print(f"{args.file}: {len(prog.registry)} definition(s), no proofs")
    return 0


def cmd_eval(args) -> int:
    prog = load_program(args.file)
    model = prog.model
    s = load_state(args.state, model)
    env = Environment(parse_env(args.env))
    if args.term:
        v = denote_term(_lookup(prog.terms, args.term, "term"), env, model).eval(s)
        print(v)
    else:
        v = denote_formula(_lookup(prog.formulas, args.formula, "formula"), env, model).eval(s)
        print("true" if v else "false")
    return 0


def cmd_run(args) -> int:
    prog = load_program(args.file)
    model = prog.model
    p = _lookup(prog.proofs, args.proof, "proof")
    env = Environment(parse_env(args.env))
    s0 = load_state(args.state, model)
    policy = MergePolicy.parse(args.merge)
    conclusion = check_proof(p, prog.registry)
    print(f"conclusion: {show(conclusion)}")
    if args.witness:
        w = extract_witness(p, env, model, args.witness, s0, args.cap, policy)
        trace, state, holds = w.trace, w.state, True
    else:
        r = extract_realizer(p, env, model, policy)
        state, holds, trace = forces_check(r, env, conclusion, model, s0, args.cap)
    print(f"iterations: {trace.iterations}")
    print(f"final state: {state_to_json(state)}")
    print(f"holds: {'true' if holds else 'false'}")
    if args.witness:
        print(f"witness: {show(w.target)} = {w.value}")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace.to_json())
    return 0 if holds else 2


def cmd_laws(args) -> int:
    results = run_suites(args.seed, args.iters, args.suite or ("merge", "monad", "prefix"))
    for r in results:
        print(r.line())
        if r.counterexample:
            print(f"  counterexample: {r.counterexample}")
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return 0 if failed == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="em1", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse a program and check all of its proofs")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("eval", help="evaluate a named term or formula at a state")
    e.add_argument("file")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--term")
    g.add_argument("--formula")
    e.add_argument("--state", help="state JSON, a file holding it, or 'empty'")
    e.add_argument("--env", help="bindings like x=3,y=4; unbound variables read as 0")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("run", help="extract a realizer and run the learning loop")
    r.add_argument("file")
    r.add_argument("--proof", required=True)
    r.add_argument("--env", help="bindings like x=3,y=4; unbound variables read as 0")
    r.add_argument("--state")
    r.add_argument("--merge", choices=[p.value for p in MergePolicy], default=MergePolicy.OVERRIDE.value)
    r.add_argument("--cap", type=int, default=DEFAULT_CAP)
    r.add_argument("--trace", metavar="OUT", help="write the learning trace as JSON")
    r.add_argument("--witness", metavar="P", help="report the learned value of the first phi_P term")
    r.set_defaults(func=cmd_run)

    law = sub.add_parser("laws", help="run the randomized law suites")
    law.add_argument("--seed", type=int, default=0)
    law.add_argument("--iters", type=int, default=1000)
    law.add_argument("--suite", action="append", choices=SUITES)
    law.set_defaults(func=cmd_laws)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Em1Error as exc:
        print(f"em1: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"em1: error: {exc}", file=sys.stderr)
        return 1
    except RecursionError:
        print("em1: error: expression nesting too deep", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
