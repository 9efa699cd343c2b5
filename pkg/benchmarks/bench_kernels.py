"""Compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--quick]

Each row times one kernel call in both implementations and checks that the
outputs agree exactly.
"""

import argparse
import sys
import time

from orientcorr import _purekernels as pure
from orientcorr.kernels import COMPILED

try:
    from orientcorr import _kernels as fast
except ImportError:
    fast = None

KEY = 0x9E3779B97F4A7C15


def _time(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t, out


def cases(quick: bool):
    scale = 1 if quick else 10
    yield "oracle_counts n=5", "oracle_counts", (5,)
    if not quick:
        yield "oracle_counts n=6", "oracle_counts", (6,)
    yield f"annealed gnp n=30 x{2000 * scale}", "annealed_counts", (30, False, 0.8, 0, KEY, 2000 * scale)
    yield f"annealed gnm n=20 x{2000 * scale}", "annealed_counts", (20, True, 0.0, 60, KEY, 2000 * scale)
    yield f"quenched gnp n=8 x{5000 * scale}", "quenched_counts", (8, False, 0.78, 0, KEY, 5000 * scale)
    P = (1 << 50) - 27
    yield "gnp_mod n=40 p=4/5", "gnp_mod", (40, P, 3 * pow(5, -1, P) % P, pow(5, -1, P))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args(argv)
    if fast is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'case':34} {'compiled s':>11} {'python s':>10} {'speedup':>8}  same")
    ok = True
    for label, name, a in cases(args.quick):
        tc, oc = _time(getattr(fast, name), *a)
        tp, op = _time(getattr(pure, name), *a)
        same = tuple(oc) == tuple(op)
        ok &= same
        print(f"{label:34} {tc:11.4f} {tp:10.3f} {tp / max(tc, 1e-9):8.1f}  {same}")
    print(f"selected at import: {'compiled' if COMPILED else 'python'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
