"""Compiled tableau core vs the numpy fallback.

Runs the same random rotation/measurement workload through both cores and
checks the final tableaux agree.

    python3 benchmarks/bench_core.py [--sizes 64 256 1024] [--ops 400]
"""

import argparse
import random
import time

import numpy as np

from psc.engine import _core_py
from psc.engine.state import StabilizerState
from psc.pauli import PauliRotation, PauliString
from psc.rng import XorShift64Star

try:
    from psc.engine import _core as _core_c
except ImportError:
    _core_c = None


def random_hermitian(n, rnd, weight):
    qs = rnd.sample(range(n), weight)
    letters = ["I"] * n
    for q in qs:
        letters[q] = rnd.choice("XYZ")
    return PauliString.from_letters("".join(letters)).scaled(rnd.choice((0, 2)))


def workload(n, ops, seed):
    rnd = random.Random(seed)
    out = []
    for _ in range(ops):
        p = random_hermitian(n, rnd, rnd.randint(1, min(n, 8)))
        out.append(("rot" if rnd.random() < 0.7 else "meas", p, rnd.choice((1, -1))))
    return out


def run(core, n, work, seed):
    st = StabilizerState.zero(n)
    st._core = core
    rng = XorShift64Star(seed)
    outs = []
    t = time.perf_counter()
    for kind, p, s in work:
        if kind == "rot":
            st.apply_rotation(PauliRotation(p, s))
        else:
            outs.append(st.measure(p, rng))
    return time.perf_counter() - t, st, outs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--ops", type=int, default=400)
    ap.add_argument("--seed", type=int, default=7)
    a = ap.parse_args()
    cores = [("python", _core_py)] + ([("cython", _core_c)] if _core_c else [])
    print(f"{'n':>6} " + " ".join(f"{name:>10}" for name, _ in cores) + "   speedup")
    for n in a.sizes:
        work = workload(n, a.ops, a.seed)
        res = [run(core, n, work, a.seed) for _, core in cores]
        times = [r[0] for r in res]
        if len(res) == 2:
            same = res[0][2] == res[1][2] and all(
                np.array_equal(getattr(res[0][1], k), getattr(res[1][1], k)) for k in "XZE"
            )
            if not same:
                raise SystemExit(f"cores disagree at n={n}")
        sp = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else "      n/a"
        print(f"{n:>6} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times) + f"  {sp}")


if __name__ == "__main__":
    main()
