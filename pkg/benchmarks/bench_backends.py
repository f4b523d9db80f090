"""Time the numba kernels against the pure-numpy fallback.

Workloads mirror the hot paths: orbit sweeps apply every group element to
batches of row vectors (act_rows), orbit canonicalization renormalizes the
images (normalize_rows), group closure multiplies matrix pairs (matmul4),
and line identification recodes basis pairs (pluecker_codes).  Run as

    python3 benchmarks/bench_backends.py [--q 13] [--repeat 5]

Numbers are best-of-repeat wall times after a warmup pass (the warmup also
absorbs JIT compilation on the numba side).
"""

import argparse
import time

import numpy as np

from cubica import gf, group, pg3
from cubica._kernels import numpy_impl

try:
    from cubica._kernels import numba_impl
except ImportError:
    numba_impl = None


def best_time(fn, args, repeat):
    fn(*args)  # warmup / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(q, rng):
    F = gf.field_make(q)
    grp = group.get_group(q)
    space = pg3.get_space(q)

    reps = -(-200_000 // grp.order)
    mats = np.tile(grp.mats, (reps, 1, 1))
    vecs = np.tile(space.points[: grp.order], (reps, 1))
    n = min(len(mats), len(vecs))
    mats, vecs = mats[:n], vecs[:n]

    pairs = rng.permutation(n) % len(grp.mats)
    mats2 = grp.mats[pairs]

    u = space.line_basis[:, 0].copy()
    v = space.line_basis[:, 1].copy()

    return F, [
        ("act_rows", f"{n} vector/matrix pairs",
         lambda impl: impl.act_rows(vecs, mats, F.add, F.mul)),
        ("matmul4", f"{n} matrix pairs",
         lambda impl: impl.matmul4(mats, mats2, F.add, F.mul)),
        ("normalize_rows", f"{n} rows",
         lambda impl: impl.normalize_rows(vecs, F.mul, F.inv)),
        ("pluecker_codes", f"{len(u)} line bases",
         lambda impl: impl.pluecker_codes(u, v, F.add, F.mul, F.sub,
                                          F.inv, q)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(
        description="compare numba and numpy kernel backends")
    ap.add_argument("--q", type=int, default=13)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    F, cases = workloads(args.q, rng)

    print(f"q={args.q}  repeat={args.repeat}  (best wall time per call)")
    header = f"{'kernel':<16} {'workload':<26} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, desc, call in cases:
        t_np = best_time(call, (numpy_impl,), args.repeat)
        if numba_impl is None:
            print(f"{name:<16} {desc:<26} {t_np * 1e3:>8.2f}ms {'n/a':>10} {'':>8}")
            continue
        t_nb = best_time(call, (numba_impl,), args.repeat)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<16} {desc:<26} {t_np * 1e3:>8.2f}ms "
              f"{t_nb * 1e3:>8.2f}ms {ratio:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
