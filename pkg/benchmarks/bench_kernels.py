"""Compare the compiled and pure-Python affine permutation kernels.

Usage: python benchmarks/bench_kernels.py [--n 6] [--count 20000] [--seed 0]

Times each kernel function on the same random windows for both backends and
checks that they return identical results.  A second section times an
end-to-end composition batch with each backend in a fresh interpreter.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from klrwcyl import _kernels_py

try:
    from klrwcyl import _kernels as _compiled
except ImportError:
    _compiled = None


def random_window(rng, n, spread):
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(p + n * rng.randint(-spread, spread) for p in perm)


def bench(fn, args):
    t = time.perf_counter()
    out = [fn(*a) for a in args]
    return time.perf_counter() - t, out


END_TO_END = """
import random, time
from fractions import Fraction as F
from klrwcyl import BACKEND
from klrwcyl.engine import compose
from klrwcyl.quiver import make_quiver, validate_configuration
from klrwcyl.strands import enumerate_taut
q = make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1}, {"1": 1})
c = validate_configuration(q, {"1": [F(0)]}, {"1": [F(1, 4), F(3, 4)], "2": [F(1, 2)]})
basis = enumerate_taut(c, c, 1, 1)
rng = random.Random(%d)
pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(%d)]
t = time.perf_counter()
for a, b in pairs:
    compose(b, a)
print(BACKEND, round(time.perf_counter() - t, 3))
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--count", type=int, default=20000)
    ap.add_argument("--pairs", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    if _compiled is None:
        print("compiled kernel not built; only the pure-Python backend is available")
        return 1
    rng = random.Random(a.seed)
    wins = [random_window(rng, a.n, 2) for _ in range(a.count)]
    cases = {
        "length": [(f,) for f in wins],
        "inverse": [(f,) for f in wins],
        "compose": [(f, g) for f, g in zip(wins, reversed(wins))],
        "left_mult": [(rng.randrange(a.n), f) for f in wins],
        "min_left_descent": [(f,) for f in wins],
        "canonical_word": [(f,) for f in wins],
    }
    print(f"kernel timings, n={a.n}, {a.count} windows")
    print(f"{'function':<18}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, args in cases.items():
        tp, op = bench(getattr(_kernels_py, name), args)
        tc, oc = bench(getattr(_compiled, name), args)
        if op != oc:
            print(f"{name}: backends disagree")
            return 1
        print(f"{name:<18}{tp:>10.3f}{tc:>10.3f}{tp / tc:>9.1f}")
    print(f"end-to-end: {a.pairs} compositions on a framed two-node quiver")
    for pure in ("1", ""):
        env = dict(os.environ, KLRW_PURE_PYTHON=pure)
        if not pure:
            env.pop("KLRW_PURE_PYTHON")
        res = subprocess.run(
            [sys.executable, "-c", END_TO_END % (a.seed, a.pairs)],
            env=env, capture_output=True, text=True, check=True,
        )
        print("  " + res.stdout.strip())
    return 0


if __name__ == "__main__":
    sys.exit(main())
