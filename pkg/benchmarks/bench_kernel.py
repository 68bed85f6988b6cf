"""Compare the compiled kernel with the numpy fallback on the same batches.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""
import argparse
import time

import numpy as np

from slstar.exhaust import build_lift_table, notin_tables
from slstar.kernel import _pykernel
from slstar.kernel.tables import all_matrices, ring_tables
from slstar.rings import ring

try:
    from slstar.kernel import _ckernel
except ImportError:  # extension not built
    _ckernel = None

# (descriptor, has a nonzero radical so the lift tables exist)
CASES = (("Mat(2,Z/(9))", True), ("Mat(2,Prod(Z/(4),Z/(4)))", True), ("Mat(2,GF(4))", False))


def _batch(T, size, rng):
    mats = all_matrices(T)
    A = mats[rng.integers(0, len(mats), size)].astype(np.int32)
    C = mats[rng.integers(0, len(mats), size)].astype(np.int32)
    return A, C


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(a, b) for a, b in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def bench(desc, lift, size, repeat, rng):
    A_ring = ring(desc)
    T = ring_tables(A_ring.base)
    notin = notin_tables(A_ring)
    A, C = _batch(T, size, rng)
    S = A.copy()
    calls = {
        "symmetric_mask": lambda k: k.symmetric_mask(T.add, T.mul, T.inv, A, C),
        "valid_mask": lambda k: k.valid_mask(T.add, T.mul, T.neg, T.inv, notin, A, C),
        "is_symmetric_mask": lambda k: k.is_symmetric_mask(T.inv, S),
        "remainder_units": lambda k: k.remainder_units(T.add, T.mul, T.neg, T.unit, A, S, C),
    }
    if lift:
        L = build_lift_table(A_ring)
        calls["project"] = lambda k: k.project(L.proj, L.base, A)
    rows = []
    for name, call in calls.items():
        tp, op = _time(lambda: call(_pykernel), repeat)
        if _ckernel is None:
            rows.append((desc, name, tp, None, None))
            continue
        tc, oc = _time(lambda: call(_ckernel), repeat)
        rows.append((desc, name, tp, tc, _same(op, oc)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=200_000, help="pairs per batch")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'ring':28} {'kernel':18} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}  equal")
    for desc, lift in CASES:
        for d, name, tp, tc, eq in bench(desc, lift, args.size, args.repeat, rng):
            if tc is None:
                print(f"{d:28} {name:18} {tp * 1e3:10.1f} {'-':>10} {'-':>8}  -")
            else:
                print(f"{d:28} {name:18} {tp * 1e3:10.1f} {tc * 1e3:10.1f} {tp / tc:8.1f}x  {eq}")


if __name__ == "__main__":
    main()
