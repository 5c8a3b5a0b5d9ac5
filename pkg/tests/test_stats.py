from fractions import Fraction
from math import comb, sqrt

import pytest

from blockcurves import census, formulas, stats
from blockcurves.gf import make_field as gf_make
from blockcurves.stats import McConfig


def test_config_validation(F3):
    with pytest.raises(ValueError):
        McConfig(F3, 3, 0, 1)


def test_thread_count_invariance(F3, F4):
    for sampler in (
        lambda c: stats.mc_blocking_proportion(c),
        lambda c: stats.mc_point_count(c)[0].counts,
        lambda c: stats.mc_skew_lines(c)[2].counts,
    ):
        cfgs = [McConfig(F3, 5, 5000, 71, threads=t) for t in (1, 2, 8)]
        ref = sampler(cfgs[0])
        assert all(sampler(c) == ref for c in cfgs[1:])
    line = [stats.mc_line_intersection(McConfig(F4, 4, 5000, 72, threads=t), 3)[0].counts
            for t in (1, 2, 8)]
    assert line[0] == line[1] == line[2]
    uni = [stats.mc_unipoly_roots(F4, 5000, 73, threads=t)[0].counts for t in (1, 2, 8)]
    assert uni[0] == uni[1] == uni[2]


def test_seed_sensitivity(F3):
    a, _ = stats.mc_blocking_proportion(McConfig(F3, 5, 4000, 1))
    b, _ = stats.mc_blocking_proportion(McConfig(F3, 5, 4000, 2))
    assert a != b  # different seeds explore different samples


def test_chi_square_selftest_binomial():
    # synthetic data drawn from the law itself must pass the pooled test
    q = 3
    pmf = lambda t: formulas.point_count_pmf(q, t)
    support = list(range(14))
    counts = stats.synthetic_from_pmf(pmf, support, 20000, 99)
    verdict = stats.chi_square_verdict(counts, pmf, support, 20000)
    assert verdict.test == "chi-square"
    assert verdict.passed


def test_chi_square_selftest_line_law():
    q = 16
    pmf = lambda t: formulas.line_count_pmf(q, t)
    support = list(range(q + 2))
    counts = stats.synthetic_from_pmf(pmf, support, 30000, 7)
    assert stats.chi_square_verdict(counts, pmf, support, 30000).passed


def test_chi_square_statistic_zero_on_exact_histogram(F2):
    # the exact d=3 census histogram matches the binomial law cell by cell
    h = census.point_count_histogram_exact(F2, 3)
    pmf = lambda t: formulas.point_count_pmf(2, t)
    verdict = stats.chi_square_verdict(h, pmf, range(8), 1024)
    assert verdict.statistic == 0.0
    assert verdict.passed


def test_point_count_negative_control(F2):
    # d=1 < 2q-1: deterministic point counts, the binomial verdict must fail
    hist, verdict = stats.mc_point_count(McConfig(F2, 1, 4000, 5))
    assert set(hist.counts) == {3, 7}
    assert not verdict.passed


def test_blocking_proportion_q2_d3(F2):
    est, se = stats.mc_blocking_proportion(McConfig(F2, 3, 20000, 31, threads=2))
    assert abs(est - 0.5) <= 3 * se


def test_blocking_proportion_single_sample(F2):
    est, se = stats.mc_blocking_proportion(McConfig(F2, 3, 1, 5))
    assert est in (0.0, 1.0)
    assert se == 0.0


def test_blocking_matches_exact_over_repeated_seeds(F2):
    # the sampler's expectation is the exact brute-force density 1/2
    for seed in (1, 2, 3, 4, 5):
        est, se = stats.mc_blocking_proportion(McConfig(F2, 3, 4000, seed))
        assert abs(est - 0.5) <= 3 * se


def test_k_point_lines_q25():
    F25 = gf_make(5, 2)
    n = 3000
    est0, se0 = stats.mc_k_point_lines(McConfig(F25, 25, n, 77, threads=2), 0)
    t0 = float(formulas.line_count_pmf(25, 0))
    assert abs(est0 - t0) <= 3 * max(se0, 1e-9)
    est1, se1 = stats.mc_k_point_lines(McConfig(F25, 25, n, 77, threads=2), 1)
    t1 = float(formulas.line_count_pmf(25, 1))
    assert abs(est1 - t1) <= 3 * max(se1, 1e-9)


def test_point_count_mean_q3_d5(F3):
    hist, verdict = stats.mc_point_count(McConfig(F3, 5, 20000, 17, threads=2))
    assert verdict.passed
    se = sqrt(hist.variance / hist.total)
    assert abs(hist.mean - 13 / 3) <= 3 * se


def test_line_intersection_q4(F4):
    hist, verdict, tv = stats.mc_line_intersection(McConfig(F4, 4, 20000, 23, threads=2), 0)
    assert verdict.passed
    p0 = hist.counts.get(0, 0) / hist.total
    target = float(Fraction(3, 4) ** 5)
    se = sqrt(target * (1 - target) / hist.total)
    assert abs(p0 - target) <= 3 * se
    assert 0 < tv < 1


def test_line_intersection_requires_degree(F4):
    with pytest.raises(ValueError):
        stats.mc_line_intersection(McConfig(F4, 3, 10, 1), 0)


def test_tv_poisson_decreasing():
    tvs = [stats.tv_binomial_poisson(q) for q in (4, 9, 16, 25)]
    assert all(a > b for a, b in zip(tvs, tvs[1:]))


def test_skew_lines_q2(F2):
    mean, se, hist = stats.mc_skew_lines(McConfig(F2, 3, 20000, 41, threads=2))
    assert abs(mean - 7 / 8) <= 3 * se
    assert sum(hist.counts.values()) == 20000


def test_skew_lines_requires_degree(F3):
    with pytest.raises(ValueError):
        stats.mc_skew_lines(McConfig(F3, 2, 10, 1))


def test_k_point_lines_partition_and_law(F4):
    # the same draws partition across k, so the estimates sum to exactly 1
    n = 8000
    total = 0.0
    for k in range(0, F4.q + 2):
        est, _ = stats.mc_k_point_lines(McConfig(F4, 4, n, 53), k)
        total += est
    assert abs(total - 1.0) < 1e-12
    est0, se0 = stats.mc_k_point_lines(McConfig(F4, 4, n, 53), 0)
    target = float(formulas.line_count_pmf(4, 0))
    assert abs(est0 - target) <= 3 * max(se0, 1e-9)


def test_unipoly_roots_exhaustive_q2(F2):
    # all 4 degree <= 1 polynomials: root counts {0:1, 1:2, 2:1}, i.e.
    # exactly Binomial(2, 1/2); the sampler must match within 3 sigma
    law = {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(1, 4)}
    assert {t: Fraction(comb(2, t), 4) for t in range(3)} == law
    hist, verdict = stats.mc_unipoly_roots(F2, 20000, 61)
    assert verdict.passed
    for t, p in law.items():
        se = sqrt(float(p) * (1 - float(p)) / 20000)
        assert abs(hist.counts.get(t, 0) / 20000 - float(p)) <= 3 * se


def test_unipoly_roots_mean_q9(F9):
    hist, verdict = stats.mc_unipoly_roots(F9, 20000, 67, threads=2)
    assert verdict.passed
    se = sqrt(hist.variance / hist.total)
    assert abs(hist.mean - 1.0) <= 3 * se


def test_mc_smooth_q2_conics(F2):
    res = stats.mc_smooth(McConfig(F2, 2, 3000, 83, threads=2))
    # exact density over all 64 conics is 28/64 (cross-checked elsewhere)
    target = 28 / 64
    assert abs(res["smooth_density"] - target) <= 3 * res["smooth_stderr"]
    assert 0 <= res["blocking_given_smooth"] <= 1


def test_mc_smooth_reports_blocking_fraction(F3):
    res = stats.mc_smooth(McConfig(F3, 6, 400, 97))
    est, se = stats.mc_blocking_proportion(McConfig(F3, 6, 400, 97))
    assert res["samples"] == 400
    assert 0 <= res["blocking_given_smooth"] <= 1
    assert res["blocking_given_smooth_stderr"] < 1


def test_mc_moments_q4(F4):
    moments = stats.mc_moments(McConfig(F4, 9, 400, 11, threads=4), 2)
    m1, se1 = moments[0]
    m2, se2 = moments[1]
    assert abs(m1 - 0.0) <= 3 * se1
    model2 = formulas.model_moment_float(4, 2)
    assert abs(m2 - model2) <= 3 * se2 + 0.1


def test_mc_moments_degenerate(F2):
    moments = stats.mc_moments(McConfig(F2, 2, 1, 3), 2)
    for _, se in moments:
        assert se == float("inf")


def test_mc_moments_thread_invariance(F4):
    a = stats.mc_moments(McConfig(F4, 9, 64, 5, threads=1), 2)
    b = stats.mc_moments(McConfig(F4, 9, 64, 5, threads=8), 2)
    assert a == b
