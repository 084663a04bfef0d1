"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_backends.py [--repeat N]

Prints one row per kernel with the per-call time of each backend, the
speed-up, and the largest difference between their outputs.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from ortholab._backend import compiled_available, load

RHO_POINTS = [(0.5, 0.6), (1.0, 1.01), (1.0, 5.0), (1.0, 20.0), (2.0, 8.0), (4.0, 30.0)]


def cases(xs):
    return {
        "li2 (1000 pts)": (lambda k: [k.li2(float(x)) for x in xs], len(xs)),
        "rogers_l (1000 pts)": (lambda k: [k.rogers_l(float(x)) for x in xs], len(xs)),
        "rogers_l_array (1000 pts)": (lambda k: k.rogers_l_array(xs), len(xs)),
        "rho_integral (6 pts)": (lambda k: [k.rho_integral(l, t, 1e-7, 11)[0] for l, t in RHO_POINTS],
                                 len(RHO_POINTS)),
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not compiled_available():
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    compiled, python = load("compiled"), load("python")
    rng = np.random.default_rng(0)
    xs = np.concatenate([rng.uniform(-50.0, 1.0, 500), rng.uniform(-1.0, 1.0, 500)])
    print(f"{'kernel':28s} {'python us/call':>15s} {'compiled us/call':>17s} {'speed-up':>9s} {'max |diff|':>11s}")
    for name, (fn, calls) in cases(xs).items():
        times = {}
        outs = {}
        for label, mod in (("python", python), ("compiled", compiled)):
            outs[label] = np.asarray(fn(mod), dtype=float)
            number = 3
            best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times[label] = best / calls * 1e6
        diff = float(np.max(np.abs(outs["python"] - outs["compiled"])))
        print(f"{name:28s} {times['python']:15.3f} {times['compiled']:17.3f} "
              f"{times['python'] / times['compiled']:9.1f} {diff:11.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
