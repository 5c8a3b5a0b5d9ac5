#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Both backends are loaded side by side and timed on the same inputs;
outputs are asserted equal before a row is reported.

    python benchmarks/bench_backends.py            # moderate sizes
    python benchmarks/bench_backends.py --quick    # smaller sizes
"""

import argparse
import time
from math import comb

import numpy as np

from blockcurves import backend, census, gf, pg2, poly


def timed(fn, *args, repeat=1):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench(name, pure_fn, fast_fn, check=None, repeat=1):
    r_pure, t_pure = timed(pure_fn, repeat=repeat)
    r_fast, t_fast = timed(fast_fn, repeat=repeat)
    if check is not None:
        assert check(r_pure, r_fast), f"{name}: backend outputs differ"
    speedup = t_pure / t_fast if t_fast > 0 else float("inf")
    print(f"{name:<38} pure {t_pure * 1e3:10.1f} ms   compiled {t_fast * 1e3:9.2f} ms"
          f"   x{speedup:,.0f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    fast = backend.load_compiled()
    pure = backend.load_pure()
    if fast is None:
        raise SystemExit("compiled backend not built; nothing to compare")

    table_q = 3 if args.quick else 4
    spec = gf.make_field(2, 2) if table_q == 4 else gf.make_field(3, 1)
    pl = pg2.plane(spec)
    masks = np.array(pl.line_masks, dtype=np.uint64)
    L = len(masks)
    binom = np.zeros((L + 1, L + 1), dtype=np.uint64)
    for i in range(L + 1):
        for j in range(i + 1):
            binom[i, j] = comb(i, j)

    arr_eq = lambda a, b: (np.asarray(a) == np.asarray(b)).all()
    pair_eq = lambda a, b: arr_eq(a[0], b[0]) and arr_eq(a[1], b[1])

    bench(f"line-union walk q={table_q} (2^{L} subsets)",
          lambda: pure.union_table_walk(masks, pl.n_points, 0, 0, binom),
          lambda: fast.union_table_walk(masks, pl.n_points, 0, 0, binom),
          check=arr_eq)

    pmasks = np.array(pl.lines_through_point, dtype=np.uint64)
    bench(f"blocking census walk q={table_q}",
          lambda: pure.census_walk(pmasks, spec.q + 1, L, 0, 0, binom),
          lambda: fast.census_walk(pmasks, spec.q + 1, L, 0, 0, binom),
          check=pair_eq)

    F3 = gf.make_field(3, 1)
    ctx_p = backend.field_ctx(F3, "pure")
    ctx_f = backend.field_ctx(F3, "compiled")
    M = poly.monomial_matrix(F3, 5)
    lp = pg2.plane(F3).line_points_array()
    n_mc = 500 if args.quick else 2000
    N = poly.n_monomials(5)
    bench(f"mc plane batch q=3 d=5 n={n_mc}",
          lambda: pure.mc_plane_batch(7, 0, n_mc, N, ctx_p, M, lp),
          lambda: fast.mc_plane_batch(7, 0, n_mc, N, ctx_f, M, lp),
          check=lambda a, b: all(arr_eq(x, y) for x, y in zip(a, b)))

    F9 = gf.make_field(3, 2)
    ctx9p = backend.field_ctx(F9, "pure")
    ctx9f = backend.field_ctx(F9, "compiled")
    bench(f"unipoly root batch q=9 n={n_mc}",
          lambda: pure.mc_unipoly_batch(7, 0, n_mc, ctx9p),
          lambda: fast.mc_unipoly_batch(7, 0, n_mc, ctx9f),
          check=arr_eq)

    rows = np.array([[(7 * i + 3 * j + i * j) % 9 for j in range(55)]
                     for i in range(12)], dtype=np.int32)
    bench("rank over F_9 (12 x 55), x200",
          lambda: [pure.rank_gf(rows, ctx9p) for _ in range(200)],
          lambda: [fast.rank_gf(rows, ctx9f) for _ in range(200)],
          check=lambda a, b: a == b)

    F256 = gf.make_field(2, 8)
    ctx256p = backend.field_ctx(F256, "pure")
    ctx256f = backend.field_ctx(F256, "compiled")
    A = np.array([[(i * 37 + j * 11) % 256 for j in range(10)] for i in range(10)],
                 dtype=np.int32)
    B = np.array([[(i * 53 + j * 29 + 1) % 256 for j in range(10)] for i in range(9)],
                 dtype=np.int32)
    xs = np.arange(160, dtype=np.int32)
    bench("resultant sweep over F_256 (160 pts)",
          lambda: list(pure.biv_resultant_sweep(A, B, xs, ctx256p)),
          lambda: list(fast.biv_resultant_sweep(A, B, xs, ctx256f)),
          check=lambda a, b: a == b)

    ys = [((i * 97 + 13) % 256) for i in range(120)]
    xs_l = list(range(120))
    bench("interpolation over F_256 (120 pts)",
          lambda: pure.upoly_interp(xs_l, ys, ctx256p),
          lambda: fast.upoly_interp(xs_l, ys, ctx256f),
          check=lambda a, b: a == b)

    print(f"\nselected backend for the library: {backend.name}")


if __name__ == "__main__":
    main()
