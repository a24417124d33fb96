"""Compare the compiled and numpy GF(2) elimination kernels.

    python benchmarks/bench_gf2.py [--repeat N]

Random dense matrices first, then the constraint systems of the lowered
fold-transversal circuits, which are what the CLI actually reduces.
"""

import argparse
import timeit

import numpy as np

from foldweb import gf2
from foldweb.lattice import cclp_y_init_circuit
from foldweb.lowering import lower_to_zx
from foldweb.pauliweb import build_system


def _time(kernel, m, repeat):
    def once():
        kernel(m.copy(), m.shape[1])

    return min(timeit.repeat(once, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    cases = [(f"random {r}x{c}", rng.integers(0, 2, (r, c), dtype=np.uint8)) for r, c in ((64, 128), (256, 512), (512, 1024))]
    for d in (3, 5, 7, 9):
        zx, _ = lower_to_zx(cclp_y_init_circuit(d))
        a = build_system(zx).matrix
        cases.append((f"cclp-y d={d} ({a.shape[0]}x{a.shape[1]})", a))

    names = list(gf2.KERNELS)
    print(f"active backend: {gf2.BACKEND}")
    print(f"{'case':34s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, m in cases:
        ref = m.copy()
        pivots = gf2.KERNELS["python"](ref, m.shape[1])
        times = []
        for n in names:
            out = m.copy()
            assert list(gf2.KERNELS[n](out, m.shape[1])) == list(pivots) and np.array_equal(out, ref)
            times.append(_time(gf2.KERNELS[n], m, args.repeat))
        row = f"{label:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
