"""Compare the compiled kernels with the pure Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Micro-benchmarks call both backends directly on the same packed polynomials.
The end-to-end benchmark runs the same shuffle workload in two subprocesses,
one with YSH_PURE_PYTHON=1.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from yshuffle import _kernels as K
from yshuffle.arith.polynomial import Polynomial, slot

WORKLOAD = """
import time
from yshuffle import _kernels as K
from yshuffle.quiver import Quiver, DimensionVector
from yshuffle.shuffle import spherical_span
q = Quiver.from_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
t = time.perf_counter()
span = spherical_span(DimensionVector({0: 1, 1: 1, 2: 1}), 3, q)
print(K.BACKEND, span.dim_gr, time.perf_counter() - t)
"""


def random_poly(rng, nvars, nterms, maxdeg):
    p = Polynomial()
    for _ in range(nterms):
        m = Polynomial.const(rng.randint(-9, 9))
        for _ in range(rng.randint(0, maxdeg)):
            k = rng.randrange(nvars)
            m = m * (Polynomial.hbar() if k == 0 else Polynomial.slot(k % 3, 1 + k // 3))
        p = p + m
    return p.terms


def micro(repeat):
    rng = random.Random(0xCAFE)
    a = random_poly(rng, 7, 60, 5)
    b = random_poly(rng, 7, 60, 5)
    moves = ((slot(0, 1).shift, slot(0, 2).shift),)
    backends = [("python", K.python_backend)]
    if K.compiled_backend is not None:
        backends.append(("compiled", K.compiled_backend))
    rows = {}
    for name, mod in backends:
        rows[name] = {
            "mul": min(timeit.repeat(lambda: mod.mul(a, b), number=20, repeat=repeat)) / 20,
            "relabel_accumulate": min(timeit.repeat(lambda: mod.relabel_accumulate({}, a, moves, 1), number=200, repeat=repeat)) / 200,
            "monomial_degree": min(timeit.repeat(lambda: [mod.monomial_degree(m) for m in a], number=200, repeat=repeat)) / 200,
        }
        if name == "compiled":
            assert mod.mul(a, b) == K.python_backend.mul(a, b)
    print(f"{'kernel':<22}" + "".join(f"{n:>14}" for n in rows))
    for kernel in rows["python"]:
        line = f"{kernel:<22}" + "".join(f"{rows[n][kernel] * 1e6:>12.1f}us" for n in rows)
        if "compiled" in rows:
            line += f"   x{rows['python'][kernel] / rows['compiled'][kernel]:.1f}"
        print(line)


def end_to_end():
    for pure in ("0", "1"):
        env = dict(os.environ, YSH_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
        backend, *rest = out.stdout.split(" ", 1)
        print(f"spherical span A2^(1), v=(1,1,1), d<=3  [{backend}]: {rest[0].strip()}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    micro(args.repeat)
    end_to_end()
