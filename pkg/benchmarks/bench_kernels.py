"""Compare the compiled and pure-Python row-reduction kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints per-size timings for ``rref_rows`` on random integer matrices and an
end-to-end workload (the skew-group sweep) run once per backend in a
subprocess, since the backend is fixed at import.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from graded_workbench import _kernels_py

try:
    from graded_workbench import _kernels as compiled
except ImportError:
    compiled = None

SWEEP = """
import time
from graded_workbench import kernels, skew as S
from graded_workbench.groups import make_cyclic, direct_product
t = time.perf_counter()
for grp in (make_cyclic(2), make_cyclic(3), make_cyclic(4), direct_product(make_cyclic(2), make_cyclic(2))):
    for n in range(1, 6):
        for act in S.enumerate_actions(grp, n):
            spec = S.function_skew_spec(grp, act)
            S.verdict_simple(spec, S.build(spec), samples=50, seed=1)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def _matrix(rng, n, lo=-9, hi=9):
    # rank-deficient by construction so elimination does real cancellation work
    base = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n // 2 + 1)]
    rows = []
    for _ in range(n):
        coef = [rng.randint(-3, 3) for _ in base]
        rows.append([sum(c * b[j] for c, b in zip(coef, base)) for j in range(n)])
    return rows


def bench_rref(repeat: int):
    rng = random.Random(0)
    print(f"{'size':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in (8, 16, 32, 48):
        mats = [_matrix(rng, n) for _ in range(5)]
        def run(mod):
            for m in mats:
                mod.rref_rows([r[:] for r in m], n)
        tp = min(timeit.repeat(lambda: run(_kernels_py), number=1, repeat=repeat)) * 1000
        if compiled is None:
            print(f"{n:>6} {tp:>10.2f} {'n/a':>10} {'n/a':>8}")
            continue
        tc = min(timeit.repeat(lambda: run(compiled), number=1, repeat=repeat)) * 1000
        print(f"{n:>6} {tp:>10.2f} {tc:>10.2f} {tp / tc:>7.2f}x")


def bench_sweep():
    for pure in (True, False):
        env = dict(os.environ)
        if pure:
            env["GRADED_WORKBENCH_PURE"] = "1"
        else:
            env.pop("GRADED_WORKBENCH_PURE", None)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"skew sweep (63 instances) backend={backend}: {float(secs):.2f} s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    bench_rref(args.repeat)
    bench_sweep()


if __name__ == "__main__":
    main()
