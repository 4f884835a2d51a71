"""Compare the compiled kernels with the pure-Python fallback.

Runs a few micro benchmarks on the kernel functions directly and then an
end-to-end Groebner basis computation under each backend (in a subprocess,
since the backend is chosen at import time).

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from defring import _kernels_py

try:
    from defring import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

E2E = """
import time
from defring import Ideal, VarContext, kernels
ctx = VarContext("X,Y,A,B,C,F", 3, "grevlex")
ideals = [
    ["A^2 + B*C", "F^2 + 4*X*Y", "A*F + 2*C*X", "A*F + 2*B*Y", "2*A*X - B*F", "2*A*Y - C*F"],
    ["A^2 + B*C - 3*F", "2*A*X - B*F + 9", "2*A*Y - C*F", "B*Y - C*X + 3*A"],
]
t = time.perf_counter()
for _ in range({reps}):
    for gens in ideals:
        Ideal.parse(gens, ctx).gb
print(kernels.IMPLEMENTATION, time.perf_counter() - t)
"""


def _monos(rng, n, nvars, deg):
    return [tuple(rng.randint(0, deg) for _ in range(nvars)) for _ in range(n)]


def micro(mod, repeat):
    rng = random.Random(1)
    leads = _monos(rng, 40, 6, 3)
    vals = [rng.randint(0, 2) for _ in leads]
    ms = _monos(rng, 200, 6, 6)
    g = {m: rng.randint(1, 8) for m in _monos(rng, 30, 6, 3)}
    shift = (1, 0, 2, 0, 1, 0)

    def reducers():
        for m in ms:
            mod.find_reducer(m, 1, leads, vals)

    def subs():
        p = {m: 1 for m in ms}
        mod.sub_mul(p, g, 3, shift, 0)

    def standard():
        mod.count_standard(leads[:8], 6, 8)

    out = {}
    for name, fn in (("find_reducer x200", reducers), ("sub_mul", subs), ("count_standard d=8", standard)):
        out[name] = min(timeit.repeat(fn, number=20, repeat=repeat)) / 20
    return out


def end_to_end(pure, reps):
    env = dict(os.environ, DEFRING_PURE_PYTHON="1" if pure else "0")
    res = subprocess.run([sys.executable, "-c", E2E.format(reps=reps)], env=env, capture_output=True, text=True, check=True)
    impl, secs = res.stdout.split()
    return impl, float(secs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = micro(_kernels_py, args.repeat)
    cy = micro(_kernels_c, args.repeat) if _kernels_c else None
    print(f"{'kernel':<22}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for k, v in py.items():
        if cy:
            print(f"{k:<22}{v * 1e6:>14.1f}{cy[k] * 1e6:>14.1f}{v / cy[k]:>9.1f}x")
        else:
            print(f"{k:<22}{v * 1e6:>14.1f}{'n/a':>14}")
    reps = 20
    impl_py, t_py = end_to_end(True, reps)
    impl_c, t_c = end_to_end(False, reps)
    print(f"\nGroebner basis x{reps}: {impl_py} {t_py:.3f}s, {impl_c} {t_c:.3f}s ({t_py / t_c:.2f}x)")


if __name__ == "__main__":
    main()
