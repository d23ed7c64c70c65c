"""Compare the compiled and numpy sweep kernels on the 12-variable identity.

    python3 benchmarks/bench_kernel.py [--tuples N] [--repeat R]
"""

import argparse
import time

import numpy as np

from rpsalg.algebra import rps_algebra
from rpsalg.field import PrimeField, Rationals
from rpsalg.kernel import IntSweep, backends
from rpsalg.verify import composed_identity


def bench(sweep, n, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        found = sweep.first_nonzero(0, n)
        best = min(best, time.perf_counter() - t0)
    assert found == -1
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tuples", type=int, default=1 << 20)
    ap.add_argument("--repeat", type=int, default=3)
    ns = ap.parse_args()
    print(f"{'field':8} {'backend':8} {'seconds':>9} {'Mtuples/s':>10}")
    for F in (Rationals(), PrimeField(7)):
        M = rps_algebra(F)
        p = composed_identity(F)
        codes = np.arange(4096, dtype=np.int64)
        ref = None
        for name, be in sorted(backends().items()):
            s = IntSweep(p, M, backend=be)
            vals = s.eval_codes(codes)
            ref = vals if ref is None else ref
            assert np.array_equal(vals, ref), "backends disagree"
            t = bench(s, ns.tuples, ns.repeat)
            print(f"{str(F):8} {name:8} {t:9.3f} {ns.tuples / t / 1e6:10.2f}")


if __name__ == "__main__":
    main()
