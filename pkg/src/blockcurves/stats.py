"""Seeded Monte Carlo samplers over random plane curves, with verdicts.

Sample i always draws from the SplitMix64 stream keyed by (seed, i), and
work is split into fixed-size index blocks, so every result is a pure
function of (spec, d, samples, seed) no matter how many threads run the
blocks.  Chi-square verdicts pool cells to expected count >= 5 and compare
against the 0.999 quantile, deliberately loose so that fixed-seed
acceptance runs are stable.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import exp, factorial, sqrt

import numpy as np
from scipy.stats import chi2

from . import backend, formulas, gf, pg2, poly, smooth
from ._rng import Stream
from .gf import FieldSpec

_MASK64 = (1 << 64) - 1
_BLOCK = 4096


@dataclass(frozen=True)
class McConfig:
    spec: FieldSpec
    d: int
    samples: int
    seed: int
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


@dataclass(frozen=True)
class Histogram:
    counts: dict[int, int]
    total: int
    mean: float
    variance: float  # sample variance (ddof=1), nan for total < 2

    @staticmethod
    def from_values(values: np.ndarray) -> "Histogram":
        vals = np.asarray(values)
        total = int(vals.size)
        counts = {}
        for v, c in zip(*np.unique(vals, return_counts=True)):
            counts[int(v)] = int(c)
        mean = float(vals.mean()) if total else float("nan")
        var = float(vals.var(ddof=1)) if total > 1 else float("nan")
        return Histogram(counts, total, mean, var)


@dataclass(frozen=True)
class TestVerdict:
    statistic: float
    threshold: float
    passed: bool
    test: str  # "chi-square" | "z-score" | "total-variation"


def chi_square_verdict(counts: dict[int, int], pmf, support, n: int,
                       level: float = 0.999, min_expected: float = 5.0) -> TestVerdict:
    """Pool support cells (left to right, remainder into the last cell) to
    expected >= min_expected, then chi-square against the pooled law."""
    cells = []
    acc_obs = 0
    acc_exp = 0.0
    for t in support:
        acc_obs += counts.get(t, 0)
        acc_exp += float(pmf(t)) * n
        if acc_exp >= min_expected:
            cells.append((acc_obs, acc_exp))
            acc_obs = 0
            acc_exp = 0.0
    if acc_exp > 0 or acc_obs > 0:
        if cells:
            o, ex = cells[-1]
            cells[-1] = (o + acc_obs, ex + acc_exp)
        else:
            cells.append((acc_obs, acc_exp))
    if len(cells) < 2:
        raise ValueError("not enough mass to form two chi-square cells")
    stat = sum((o - ex) ** 2 / ex for o, ex in cells)
    df = len(cells) - 1
    thr = float(chi2.ppf(level, df))
    return TestVerdict(stat, thr, stat <= thr, "chi-square")


def z_verdict(estimate: float, target: float, stderr: float, z: float = 3.0) -> TestVerdict:
    stat = abs(estimate - target) / stderr if stderr > 0 else float("inf")
    return TestVerdict(stat, z, stat <= z, "z-score")


def tv_binomial_poisson(q: int) -> float:
    """Total-variation distance between Binomial(q+1, 1/q) and Poisson(1)."""
    n = q + 1
    tv = 0.0
    poisson_tail = 1.0
    for k in range(n + 1):
        b = float(formulas.line_count_pmf(q, k))
        p = exp(-1.0) / factorial(k)
        poisson_tail -= p
        tv += abs(b - p)
    return 0.5 * (tv + poisson_tail)


def _blocks(n: int):
    out = []
    start = 0
    while start < n:
        cnt = min(_BLOCK, n - start)
        out.append((start, cnt))
        start += cnt
    return out


def _run_blocks(fn, n: int, threads: int):
    blocks = _blocks(n)
    if threads <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, blocks))


def _plane_batches(cfg: McConfig):
    spec = cfg.spec
    seed = cfg.seed & _MASK64
    N = poly.n_monomials(cfg.d)
    pl = pg2.plane(spec)
    M = poly.monomial_matrix(spec, cfg.d)
    lp = pl.line_points_array()
    ctx = backend.field_ctx(spec)
    impl = backend.impl

    def fn(block):
        i0, cnt = block
        return impl.mc_plane_batch(seed, i0, cnt, N, ctx, M, lp)

    parts = _run_blocks(fn, cfg.samples, cfg.threads)
    pc = np.concatenate([p[0] for p in parts])
    sk = np.concatenate([p[1] for p in parts])
    bl = np.concatenate([p[2] for p in parts])
    return pc, sk, bl


def mc_blocking_proportion(cfg: McConfig) -> tuple[float, float]:
    """Fraction of sampled curves that are blocking, with its stderr."""
    _, _, bl = _plane_batches(cfg)
    n = cfg.samples
    p_hat = float(bl.sum()) / n
    return p_hat, sqrt(p_hat * (1 - p_hat) / n)


def mc_point_count(cfg: McConfig) -> tuple[Histogram, TestVerdict]:
    """Point-count histogram with a chi-square verdict against
    Binomial(q^2+q+1, 1/q); the exact law holds for d >= 2q-1."""
    pc, _, _ = _plane_batches(cfg)
    hist = Histogram.from_values(pc)
    q = cfg.spec.q
    n_pts = q * q + q + 1
    verdict = chi_square_verdict(
        hist.counts, lambda t: formulas.point_count_pmf(q, t), range(n_pts + 1),
        cfg.samples,
    )
    return hist, verdict


def mc_skew_lines(cfg: McConfig) -> tuple[float, float, Histogram]:
    """Mean number of skew lines with stderr, plus the full histogram."""
    if cfg.d < cfg.spec.q:
        raise ValueError("skew-line statistics need d >= q")
    _, sk, _ = _plane_batches(cfg)
    hist = Histogram.from_values(sk)
    n = cfg.samples
    stderr = sqrt(hist.variance / n) if n > 1 else float("inf")
    return hist.mean, stderr, hist


def mc_line_intersection(cfg: McConfig, line_index: int
                         ) -> tuple[Histogram, TestVerdict, float]:
    """Distribution of #(C ∩ L)(F_q) for a fixed line.

    Chi-square against the exact Binomial(q+1, 1/q) law (valid for d >= q)
    plus the reported total-variation distance to Poisson(1).
    """
    spec = cfg.spec
    q = spec.q
    if cfg.d < q:
        raise ValueError("line-intersection law needs d >= q")
    pl = pg2.plane(spec)
    if not 0 <= line_index < len(pl.lines):
        raise ValueError("line index out of range")
    seed = cfg.seed & _MASK64
    N = poly.n_monomials(cfg.d)
    M = poly.monomial_matrix(spec, cfg.d)
    rows = pl.line_points_array()[line_index]
    M_line = np.array(M[rows, :], dtype=np.uint16)
    ctx = backend.field_ctx(spec)
    impl = backend.impl

    def fn(block):
        i0, cnt = block
        return impl.mc_line_batch(seed, i0, cnt, N, ctx, M_line)

    zc = np.concatenate(_run_blocks(fn, cfg.samples, cfg.threads))
    hist = Histogram.from_values(zc)
    verdict = chi_square_verdict(
        hist.counts, lambda t: formulas.line_count_pmf(q, t), range(q + 2),
        cfg.samples,
    )
    return hist, verdict, tv_binomial_poisson(q)


def mc_k_point_lines(cfg: McConfig, k: int) -> tuple[float, float]:
    """Fraction of (curve, line) pairs meeting in exactly k rational points."""
    spec = cfg.spec
    if cfg.d < spec.q:
        raise ValueError("k-point-line statistics need d >= q")
    seed = cfg.seed & _MASK64
    N = poly.n_monomials(cfg.d)
    pl = pg2.plane(spec)
    M = poly.monomial_matrix(spec, cfg.d)
    lp = pl.line_points_array()
    ctx = backend.field_ctx(spec)
    impl = backend.impl

    def fn(block):
        i0, cnt = block
        return impl.mc_pair_batch(seed, i0, cnt, N, ctx, M, lp)

    zc = np.concatenate(_run_blocks(fn, cfg.samples, cfg.threads))
    n = cfg.samples
    p_hat = float((zc == k).sum()) / n
    return p_hat, sqrt(p_hat * (1 - p_hat) / n)


def mc_unipoly_roots(spec: FieldSpec, samples: int, seed: int, threads: int = 1
                     ) -> tuple[Histogram, TestVerdict]:
    """Distinct F_q-roots of uniform degree <= q-1 polynomials, tested
    against the exact Binomial(q, 1/q) law."""
    q = spec.q
    seed &= _MASK64
    ctx = backend.field_ctx(spec)
    impl = backend.impl

    def fn(block):
        i0, cnt = block
        return impl.mc_unipoly_batch(seed, i0, cnt, ctx)

    rc = np.concatenate(_run_blocks(fn, samples, threads))
    hist = Histogram.from_values(rc)

    def pmf(t):
        from math import comb

        return comb(q, t) * Fraction(1, q) ** t * Fraction(q - 1, q) ** (q - t)

    verdict = chi_square_verdict(hist.counts, pmf, range(q + 1), samples)
    return hist, verdict


def _smooth_samples(cfg: McConfig):
    """Per-sample (is_zero, smooth, blocking, n_points) tuples."""
    spec = cfg.spec
    seed = cfg.seed & _MASK64
    pl = pg2.plane(spec)

    def fn(block):
        i0, cnt = block
        out = []
        for i in range(i0, i0 + cnt):
            F = poly.random_poly(spec, cfg.d, Stream(seed, i))
            if F.is_zero():
                # the whole plane: blocking, not smooth
                out.append((True, False, True, pl.n_points))
                continue
            verdict = smooth.is_smooth(F, Stream(seed ^ 0xD5, i))
            mask = poly.point_set(F)
            blocking = all(mask & lm for lm in pl.line_masks)
            out.append((False, verdict.smooth, blocking, mask.bit_count()))
        return out

    parts = _run_blocks(fn, cfg.samples, cfg.threads)
    return [row for part in parts for row in part]


def mc_smooth(cfg: McConfig) -> dict:
    """Smooth-curve density and the blocking fraction among smooth samples."""
    rows = _smooth_samples(cfg)
    n = len(rows)
    n_smooth = sum(1 for r in rows if r[1])
    n_block_smooth = sum(1 for r in rows if r[1] and r[2])
    p_s = n_smooth / n
    res = {
        "samples": n,
        "smooth_density": p_s,
        "smooth_stderr": sqrt(p_s * (1 - p_s) / n),
    }
    if n_smooth:
        p_b = n_block_smooth / n_smooth
        res["blocking_given_smooth"] = p_b
        res["blocking_given_smooth_stderr"] = sqrt(p_b * (1 - p_b) / n_smooth)
    else:
        res["blocking_given_smooth"] = float("nan")
        res["blocking_given_smooth_stderr"] = float("inf")
    return res


def mc_moments(cfg: McConfig, k_max: int) -> list[tuple[float, float]]:
    """Empirical scaled central moments M_1..M_k over smooth samples.

    Rejection-samples smooth curves from S_d; each M_k comes with the
    stderr of the sample mean of the k-th powers.  Degenerate sample sets
    (fewer than two smooth curves) report stderr = inf.
    """
    if k_max < 1 or k_max > 8:
        raise ValueError("k_max must be in 1..8")
    rows = _smooth_samples(cfg)
    q = cfg.spec.q
    scale = sqrt(q + 1)
    vals = np.array([(r[3] - (q + 1)) / scale for r in rows if r[1]], dtype=float)
    out = []
    for k in range(1, k_max + 1):
        powers = vals ** k
        if len(powers) >= 2:
            m = float(powers.mean())
            se = float(powers.std(ddof=1) / sqrt(len(powers)))
        elif len(powers) == 1:
            m, se = float(powers[0]), float("inf")
        else:
            m, se = float("nan"), float("inf")
        out.append((m, se))
    return out


def synthetic_from_pmf(pmf, support, n: int, seed: int) -> dict[int, int]:
    """Draw n synthetic observations from an exact pmf by inverse CDF over
    per-index streams (used to validate the chi-square harness)."""
    seed &= _MASK64
    cdf = []
    acc = Fraction(0)
    for t in support:
        acc += Fraction(pmf(t))
        cdf.append((t, acc))
    counts: dict[int, int] = {}
    for i in range(n):
        u = Fraction(Stream(seed, i).u64(), 1 << 64)
        for t, c in cdf:
            if u < c:
                counts[t] = counts.get(t, 0) + 1
                break
        else:
            counts[support[-1]] = counts.get(support[-1], 0) + 1
    return counts
