"""Compare the pure-Python and compiled arithmetic kernels.

Micro rows call both kernel modules directly on identical deterministic
term dictionaries.  Macro rows re-run this file in a subprocess with
CLUSTERFROB_BACKEND pinned, so the whole library stack uses one backend.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from clusterfrob import _kernels_py as pure

try:
    from clusterfrob import _accel as accel
except ImportError:
    accel = None

PLENTY = [10**12]


def box_poly(side, nvars, coeff):
    rng = random.Random(97)
    out = {}
    for e in _box(side, nvars):
        out[e] = coeff(rng)
    return out


def _box(side, nvars):
    if nvars == 1:
        return [(i,) for i in range(side)]
    return [(i, j) for i in range(side) for j in range(side)]


def line_poly(length, coeff):
    rng = random.Random(71)
    return {(i, 2 * i): coeff(rng) for i in range(length)}


def gf_coeff(rng):
    return rng.randint(1, 4)


def qq_coeff(rng):
    return Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def micro_rows(repeat):
    a_gf = box_poly(16, 2, gf_coeff)        # 256 terms
    b_gf = box_poly(14, 2, gf_coeff)        # 196 terms
    a_qq = box_poly(12, 2, qq_coeff)        # 144 terms
    b_qq = box_poly(10, 2, qq_coeff)        # 100 terms
    a_line = line_poly(600, gf_coeff)       # quadratic work, few terms
    prod_gf = pure.mul_terms(a_gf, b_gf, 5, 10**6, list(PLENTY))

    def div_workload(mod):
        # peel one cancellation off the product repeatedly
        rem = dict(prod_gf)
        for e in sorted(a_gf)[:40]:
            mod.submul_terms(rem, e, a_gf[e], b_gf, 5, list(PLENTY))

    rows = [
        ("mul GF(5) 256x196 box", lambda m: m.mul_terms(
            a_gf, b_gf, 5, 10**6, list(PLENTY))),
        ("mul QQ 144x100 box", lambda m: m.mul_terms(
            a_qq, b_qq, 0, 10**6, list(PLENTY))),
        ("mul GF(5) 600-term line", lambda m: m.mul_terms(
            a_line, a_line, 5, 10**6, list(PLENTY))),
        ("add GF(5) 256+196", lambda m: m.add_terms(a_gf, b_gf, 5)),
        ("submul GF(5) x40", div_workload),
    ]
    out = []
    for name, work in rows:
        t_pure = best_of(lambda: work(pure), repeat)
        t_acc = best_of(lambda: work(accel), repeat) if accel else None
        out.append((name, t_pure, t_acc))
    return out


MACRO_SNIPPETS = {
    "explore markov depth 4": (
        "from clusterfrob.showcase import markov_seed\n"
        "from clusterfrob.seed import explore\n"
        "from clusterfrob.fields import QQ\n"
        "explore(markov_seed(2, QQ), 4)\n"),
    "invariance a3 p=3 box": (
        "import itertools\n"
        "from clusterfrob import corpus\n"
        "from clusterfrob.fields import GF\n"
        "from clusterfrob.seed import initial_seed\n"
        "from clusterfrob.frobenius import splitting_invariance_check\n"
        "s = initial_seed(corpus.load('a3'), GF(3))\n"
        "sample = list(itertools.product(range(-6, 7), repeat=3))\n"
        "assert splitting_invariance_check(s, 0, 3, sample).ok\n"),
}


def macro_time(snippet, backend):
    env = dict(os.environ, CLUSTERFROB_BACKEND=backend)
    code = ("import time\n"
            "t0 = time.perf_counter()\n"
            + snippet +
            "print(time.perf_counter() - t0)\n")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True, check=True)
    return float(proc.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="best-of repetitions per micro row (default 5)")
    args = ap.parse_args()

    rows = micro_rows(args.repeat)
    for name, snippet in MACRO_SNIPPETS.items():
        t_pure = macro_time(snippet, "pure")
        t_acc = macro_time(snippet, "compiled") if accel else None
        rows.append((name + " (subprocess)", t_pure, t_acc))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'pure':>10}  {'compiled':>10}  speedup")
    for name, t_pure, t_acc in rows:
        if t_acc is None:
            print(f"{name:<{width}}  {t_pure:>9.4f}s  {'n/a':>10}")
        else:
            print(f"{name:<{width}}  {t_pure:>9.4f}s  {t_acc:>9.4f}s  "
                  f"{t_pure / t_acc:>6.1f}x")
    if accel is None:
        print("\ncompiled backend not built; rerun after "
              "`pip install -e .` with a C toolchain")


if __name__ == "__main__":
    main()
