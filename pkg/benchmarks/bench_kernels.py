"""Compare the numba and numpy paths of the tensor-word kernels.

Run:  python benchmarks/bench_kernels.py [--repeat 5]

Each kernel runs on the same batch under both paths; outputs are checked for
equality before timing is reported.
"""

import argparse
import time

import numpy as np

from strandlab import _kernels as K
from strandlab.superrep import Symmetrizer, TensorAmbient, pe_phi, pe_space


def batch_for(space, d):
    amb = TensorAmbient(space, [range(space.size)] * d, cap=10 ** 7)
    words = amb.words()
    return amb, (np.arange(len(words), dtype=np.int64), words, np.ones(len(words), dtype=np.int64))


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(repeat):
    rows = []
    for n, lam in ((4, (2, 2)), (5, (2, 2)), (5, (2, 1, 1))):
        sp = pe_space(n)
        d = sum(lam)
        amb, batch = batch_for(sp, d)
        sym = Symmetrizer([(lam, 0)], d)
        op = pe_phi(sp, 0, 1)
        ptr, dst, val = op.csr()
        par = sp.parity_array
        cases = {
            "perms": lambda jit: (K._perms_jit if jit else K._perms_numpy)(*batch, sym.Cp, sym.Cs, par),
            "derive": lambda jit: (K._derive_jit if jit else K._derive_numpy)(*batch, ptr, dst, val, 1, par),
        }
        for name, fn in cases.items():
            fn(True)  # compile
            t_jit, a = timed(lambda: fn(True), repeat)
            t_np, b = timed(lambda: fn(False), repeat)
            ka = K.merge(*a, amb.base)
            kb = K.merge(*b, amb.base)
            same = all(np.array_equal(x, y) for x, y in zip(ka, kb))
            rows.append((f"n={n} lam={lam}", name, len(batch[0]), t_jit, t_np, same))
    print(f"{'case':22} {'kernel':7} {'terms':>7} {'numba s':>9} {'numpy s':>9} {'speedup':>8} agree")
    for case, name, size, tj, tn, same in rows:
        print(f"{case:22} {name:7} {size:7d} {tj:9.4f} {tn:9.4f} {tn / tj:8.1f} {same}")


def end_to_end():
    """Whole module builds: exact elimination dominates, so the gap is small."""
    import os
    from strandlab.periplectic_lab import PeInstance, build_pe_module
    print()
    print(f"{'build':22} {'numba s':>9} {'numpy s':>9}")
    for args in ((4, 1, 1), (5, 1, 2)):
        times = []
        for flag in ("1", "0"):
            os.environ["STRAND_JIT"] = flag
            t = time.perf_counter()
            build_pe_module(PeInstance(*args))
            times.append(time.perf_counter() - t)
        print(f"{'pe ' + str(args):22} {times[0]:9.3f} {times[1]:9.3f}")
    os.environ["STRAND_JIT"] = "1"


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-build", action="store_true")
    args = ap.parse_args()
    run(args.repeat)
    if not args.skip_build:
        end_to_end()
