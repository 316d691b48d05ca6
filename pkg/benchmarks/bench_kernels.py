"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Times sentence evaluation and the table checks on the same inputs with
each available backend and reports the speed-up of the compiled core.
"""
import argparse
import json
import time

from continuum_lab import kernels
from continuum_lab.formula import builtin, evaluate
from continuum_lab.lattice import chain, power_set


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads():
    p4 = power_set(range(4)).lattice
    p5 = power_set(range(5)).lattice
    c12 = chain(12)
    return {
        "hi on P({0..3})": lambda k: evaluate(p4, builtin("hi"), backend=k),
        "normal on P({0..4})": lambda k: evaluate(p5, builtin("normal"), backend=k),
        "dim_le_1 on chain(12)": lambda k: evaluate(c12, builtin("dim_le_1"), backend=k),
        "distributivity table check P({0..4})": lambda k: k.distrib_violation(p5.meet_array, p5.join_array),
        "associativity table check P({0..4})": lambda k: k.assoc_violation(p5.meet_array),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    rows = []
    for name, fn in workloads().items():
        times = {k.BACKEND: _best(lambda: fn(k), args.repeat) for k in backends}
        rows.append({"workload": name, "seconds": times})
    if args.json:
        print(json.dumps({"backends": [k.BACKEND for k in backends], "rows": rows}, indent=2))
        return
    print(f"{'workload':40s}" + "".join(f"{k.BACKEND:>12s}" for k in backends) + "   speed-up")
    for r in rows:
        t = r["seconds"]
        line = f"{r['workload']:40s}" + "".join(f"{t[k.BACKEND]:12.4f}" for k in backends)
        if "cython" in t and "python" in t and t["cython"] > 0:
            line += f"   {t['python'] / t['cython']:7.1f}x"
        print(line)
    if len(backends) == 1:
        print("compiled core not built; only the fallback was timed")


if __name__ == "__main__":
    main()
