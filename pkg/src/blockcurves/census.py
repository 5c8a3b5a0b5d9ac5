"""Exact enumeration engines.

Three engines, all integer-exact end to end:

  * `line_union_table` walks every subset of the q^2+q+1 lines by
    depth-first include/exclude recursion with an incremental union bitset
    and tabulates (k lines, points in union) frequencies;
  * `nb_inclusion_exclusion` turns that table into the exact non-blocking
    density sum_{k,t} (-1)^(k+1) count (1-1/q)^t;
  * `blocking_census` walks every subset of the points and counts blocking
    and nontrivially-blocking sets by size, from which the same density
    (and its smooth-curve analogue) is recovered by weighted summation.

Walks are sharded over the first s include/exclude decisions; shard totals
merge by integer addition, so results are bit-identical for any shard or
thread count.  No floating point touches any of these numbers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import backend, gf, pg2, poly
from .gf import FieldSpec

TABLE_FREE_Q = 4      # larger q needs force=True
TABLE_FORCE_Q = 5     # 2^31 nodes, compiled backend strongly advised
CENSUS_FREE_Q = 4
CENSUS_FORCE_Q = 5
BRUTE_FORCE_GUARD = 1 << 24


class SizeGuardError(ValueError):
    """Raised when an engine refuses a size without (or despite) force."""


@dataclass(frozen=True)
class FrequencyTable:
    q: int
    entries: dict[tuple[int, int], int]  # (k lines, points in union) -> count

    def row_sum(self, k: int) -> int:
        return sum(c for (kk, _), c in self.entries.items() if kk == k)

    def rows(self):
        """(k, points, frequency) sorted as in the published tables (k >= 1)."""
        return sorted((k, t, c) for (k, t), c in self.entries.items() if k >= 1)


@dataclass(frozen=True)
class BlockingCensus:
    q: int
    by_size: dict[int, int]
    nontrivial_by_size: dict[int, int]


def _binom_table(n: int) -> np.ndarray:
    out = np.zeros((n + 1, n + 1), dtype=np.uint64)
    for i in range(n + 1):
        for j in range(i + 1):
            out[i, j] = comb(i, j)
    return out


def _shard_log2(n_items: int, threads: int) -> int:
    if threads <= 1:
        return 0
    s = 1
    while (1 << s) < 8 * threads and s < 12:
        s += 1
    return min(s, n_items)


def _run_shards(fn, n_shards: int, threads: int):
    """Map shard ids through fn, merging in shard order (determinism)."""
    ids = list(range(n_shards))
    if threads <= 1:
        return [fn(i) for i in ids]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, ids))


def line_union_table(spec: FieldSpec, force: bool = False, threads: int = 1) -> FrequencyTable:
    """Exact (k, |union of k lines|) frequencies over all line subsets."""
    q = spec.q
    if q > TABLE_FORCE_Q:
        raise SizeGuardError(f"line-union table refused for q={q} (2^{q*q+q+1} subsets)")
    if q > TABLE_FREE_Q and not force:
        raise SizeGuardError(f"line-union table for q={q} needs force=True")
    pl = pg2.plane(spec)
    L = len(pl.lines)
    masks = np.array(pl.line_masks, dtype=np.uint64)
    binom = _binom_table(L)
    s = _shard_log2(L, threads)
    impl = backend.impl

    def shard(sid):
        return impl.union_table_walk(masks, pl.n_points, sid, s, binom)

    grids = _run_shards(shard, 1 << s, threads)
    total = np.zeros_like(grids[0])
    for g in grids:
        total += g
    entries = {}
    stride = pl.n_points + 1
    for k in range(L + 1):
        for t in range(stride):
            c = int(total[k * stride + t])
            if c:
                entries[(k, t)] = c
    return FrequencyTable(q, entries)


def nb_inclusion_exclusion(spec: FieldSpec, table: FrequencyTable | None = None,
                           force: bool = False, threads: int = 1) -> Fraction:
    """nb(q) = sum over the table of (-1)^(k+1) count (1-1/q)^t, exact."""
    if table is None:
        table = line_union_table(spec, force=force, threads=threads)
    q = spec.q
    base = Fraction(q - 1, q)
    npts = q * q + q + 1
    powers = [Fraction(1)] * (npts + 1)
    for t in range(1, npts + 1):
        powers[t] = powers[t - 1] * base
    total = Fraction(0)
    for (k, t), c in table.entries.items():
        if k >= 1:
            total += (1 if k % 2 == 1 else -1) * c * powers[t]
    return total


def blocking_census(spec: FieldSpec, force: bool = False, threads: int = 1) -> BlockingCensus:
    """Exact counts of blocking subsets of PG(2,q) by size (and nontrivial)."""
    q = spec.q
    if q > CENSUS_FORCE_Q:
        raise SizeGuardError(f"blocking census refused for q={q}")
    if q > CENSUS_FREE_Q and not force:
        raise SizeGuardError(f"blocking census for q={q} needs force=True")
    pl = pg2.plane(spec)
    P = pl.n_points
    pmasks = np.array(pl.lines_through_point, dtype=np.uint64)
    binom = _binom_table(P)
    s = _shard_log2(P, threads)
    impl = backend.impl

    def shard(sid):
        return impl.census_walk(pmasks, q + 1, len(pl.lines), sid, s, binom)

    results = _run_shards(shard, 1 << s, threads)
    by_size = np.zeros(P + 1, dtype=np.uint64)
    nontrivial = np.zeros(P + 1, dtype=np.uint64)
    for bs, nt in results:
        by_size += bs
        nontrivial += nt
    return BlockingCensus(
        q,
        {t: int(c) for t, c in enumerate(by_size) if c},
        {t: int(c) for t, c in enumerate(nontrivial) if c},
    )


def nu_weight(q: int, t: int) -> Fraction:
    """Limiting density of curves whose point set is one fixed t-point set."""
    n = q * q + q + 1
    return Fraction(1, q) ** t * Fraction(q - 1, q) ** (n - t)


def nu_ns_weight(q: int, t: int) -> Fraction:
    """Same under the smooth-curve point-inclusion model."""
    n = q * q + q + 1
    return Fraction(q + 1, n) ** t * Fraction(q * q, n) ** (n - t)


def nb_from_census(census: BlockingCensus) -> Fraction:
    q = census.q
    return 1 - sum(c * nu_weight(q, t) for t, c in census.by_size.items())


def nb_ns_from_census(census: BlockingCensus) -> Fraction:
    q = census.q
    return 1 - sum(c * nu_ns_weight(q, t) for t, c in census.by_size.items())


# ---------------------------------------------------------------------------
# full enumeration of S_d for tiny (q, d)

def _coeff_blocks(q: int, N: int, block: int = 4096):
    """Yield contiguous blocks of all q^N coefficient vectors as int32 arrays,
    lexicographic with c_0 the most significant digit."""
    total = q ** N
    exps = np.array([q ** (N - 1 - j) for j in range(N)], dtype=np.int64)
    start = 0
    while start < total:
        n = min(block, total - start)
        idx = np.arange(start, start + n, dtype=np.int64)
        coeffs = ((idx[:, None] // exps[None, :]) % q).astype(np.int32)
        yield coeffs
        start += n


def brute_force_density(spec: FieldSpec, d: int, predicate) -> Fraction:
    """Exact fraction of all q^N degree-d forms whose point set satisfies
    `predicate(mask, plane)`; the zero polynomial is included."""
    q = spec.q
    N = poly.n_monomials(d)
    if q ** N > BRUTE_FORCE_GUARD:
        raise SizeGuardError(f"brute force refused: q^N = {q}^{N} exceeds guard")
    pl = pg2.plane(spec)
    M = poly.monomial_matrix(spec, d)
    ctx = backend.field_ctx(spec)
    impl = backend.impl
    count = 0
    for coeffs in _coeff_blocks(q, N):
        masks = impl.eval_masks_batch(coeffs, ctx, M)
        for m in masks.tolist():
            if predicate(m, pl):
                count += 1
    return Fraction(count, q ** N)


def point_count_histogram_exact(spec: FieldSpec, d: int) -> dict[int, int]:
    """Histogram of #C_F(F_q) over every F in S_d (zero included)."""
    q = spec.q
    N = poly.n_monomials(d)
    if q ** N > BRUTE_FORCE_GUARD:
        raise SizeGuardError(f"brute force refused: q^N = {q}^{N} exceeds guard")
    pl = pg2.plane(spec)
    M = poly.monomial_matrix(spec, d)
    ctx = backend.field_ctx(spec)
    impl = backend.impl
    hist = np.zeros(pl.n_points + 1, dtype=np.int64)
    for coeffs in _coeff_blocks(q, N):
        masks = impl.eval_masks_batch(coeffs, ctx, M)
        for m in masks.tolist():
            hist[m.bit_count()] += 1
    return {t: int(c) for t, c in enumerate(hist) if c}


def predicate_blocking(mask: int, pl: pg2.Plane) -> bool:
    for lm in pl.line_masks:
        if not (mask & lm):
            return False
    return True


def predicate_nontrivial_blocking(mask: int, pl: pg2.Plane) -> bool:
    full = False
    for lm in pl.line_masks:
        inter = mask & lm
        if not inter:
            return False
        if inter == lm:
            full = True
    return not full


def predicate_skew_to_line(line_index: int):
    def pred(mask: int, pl: pg2.Plane) -> bool:
        return not (mask & pl.line_masks[line_index])

    return pred


def blocking_sets_of_size(spec: FieldSpec, t: int, nontrivial: bool = False) -> list[int]:
    """All blocking subsets of exactly t points, as bitset masks.

    Direct combination scan; guarded so it is only used at census scale.
    """
    pl = pg2.plane(spec)
    n = pl.n_points
    if comb(n, t) > 1 << 22:
        raise SizeGuardError(f"C({n},{t}) subsets is beyond the scan guard")
    out = []
    masks = pl.line_masks
    for idxs in combinations(range(n), t):
        m = 0
        for i in idxs:
            m |= 1 << i
        ok = True
        full = False
        for lm in masks:
            inter = m & lm
            if not inter:
                ok = False
                break
            if inter == lm:
                full = True
        if ok and (not nontrivial or not full):
            out.append(m)
    return out
