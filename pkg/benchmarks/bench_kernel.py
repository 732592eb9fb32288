"""Compare the compiled and pure-Python evaluators on a few schema workloads.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from em1.kernel import CMachine
from em1.laws import WORLD_SOURCE
from em1.program import parse_program
from em1.standard import StandardModel

WORKLOADS = [
    ("add(300,300)", "add", [300, 300]),
    ("mul(40,40)", "mul", [40, 40]),
    ("SQ(1600,40)", "SQ", [1600, 40]),
    ("monus(60,30)", "monus", [60, 30]),
]


def bench(model: StandardModel, name: str, args: list, repeat: int) -> tuple[float, int]:
    d = model.registry[name]
    call = model.eval_pred if d.is_predicate else model.eval_fun
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = call(name, args)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    reg = parse_program(WORLD_SOURCE).registry
    backends = ["python"] + (["cython"] if CMachine is not None else [])
    models = {b: StandardModel(reg, backend=b) for b in backends}
    print(f"{'workload':<16}" + "".join(f"{b:>14}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for label, name, xs in WORKLOADS:
        times, values = [], set()
        for b in backends:
            t, v = bench(models[b], name, xs, args.repeat)
            times.append(t)
            values.add(v)
        assert len(values) == 1, f"backends disagree on {label}: {values}"
        row = f"{label:<16}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)
    if CMachine is None:
        print("compiled kernel not available; only the pure-Python backend was timed")


if __name__ == "__main__":
    main()
