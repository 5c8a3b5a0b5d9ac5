"""Closed-form evaluators for the displayed constants and distributions.

Everything that is a rational number is returned as an exact Fraction;
only quantities involving e (the skew-line asymptotic, Poisson masses,
1/(e k!)) are floats.  Comparisons against exact values should convert
exact -> float, never the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, e, exp, factorial, isqrt

from .gf import FieldSpec


def _q_of(spec_or_q) -> int:
    return spec_or_q.q if isinstance(spec_or_q, FieldSpec) else int(spec_or_q)


def lambda_q(spec_or_q, x: Fraction) -> Fraction:
    """x (1-(1-x^q)^(q+1)) + x sum_{j=1..q} (1-x)^j (1-(1-x^q)^q)."""
    q = _q_of(spec_or_q)
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"lambda_q needs x in [0,1], got {x}")
    xq = x ** q
    head = x * (1 - (1 - xq) ** (q + 1))
    tail_factor = 1 - (1 - xq) ** q
    tail = x * sum((1 - x) ** j for j in range(1, q + 1)) * tail_factor
    return head + tail


@dataclass(frozen=True)
class BoundsReport:
    q: int
    lower: Fraction          # lambda_q(1 - 1/q)
    upper: Fraction          # 1 - lambda_q(1/q)
    exact: Fraction | None   # nb(q) when the census is feasible

    def holds(self) -> bool:
        if self.lower > self.upper:
            return False
        if self.exact is not None:
            return self.lower <= self.exact <= self.upper
        return True


def bounds_report(spec_or_q, exact: Fraction | None = None) -> BoundsReport:
    q = _q_of(spec_or_q)
    return BoundsReport(
        q,
        lambda_q(q, Fraction(q - 1, q)),
        1 - lambda_q(q, Fraction(1, q)),
        exact,
    )


def blocking_fraction_bound(spec_or_q) -> Fraction:
    """Explicit upper bound 1 - lambda_q(1-1/q) on the density of blocking
    curves (d >= 2q-1).

    The existence statement behind "most curves are not blocking" is
    non-constructive; this evaluable bound is the concrete stand-in and it
    tends to 0 as q grows.
    """
    q = _q_of(spec_or_q)
    return 1 - lambda_q(q, Fraction(q - 1, q))


def skew_expectation_exact(spec_or_q, d: int) -> Fraction:
    """(q^2+q+1) (1-1/q)^(q+1); valid once d >= q."""
    q = _q_of(spec_or_q)
    if d < q:
        raise ValueError(f"exact skew expectation needs d >= q (= {q}), got d={d}")
    return (q * q + q + 1) * Fraction(q - 1, q) ** (q + 1)


def skew_expectation_asymptotic(q: int) -> float:
    """q^2/e - q/(2e) - 5/(24e)."""
    return q * q / e - q / (2 * e) - 5 / (24 * e)


def smooth_density_main_term(spec_or_q) -> Fraction:
    q = _q_of(spec_or_q)
    return (
        Fraction(q - 1, q)
        * Fraction(q * q - 1, q * q)
        * Fraction(q ** 3 - 1, q ** 3)
    )


def point_count_pmf(spec_or_q, t: int) -> Fraction:
    """Binomial(q^2+q+1, 1/q) mass at t."""
    q = _q_of(spec_or_q)
    n = q * q + q + 1
    if not 0 <= t <= n:
        raise ValueError(f"t={t} out of range [0, {n}]")
    return comb(n, t) * Fraction(1, q) ** t * Fraction(q - 1, q) ** (n - t)


def line_count_pmf(spec_or_q, t: int) -> Fraction:
    """Binomial(q+1, 1/q) mass at t."""
    q = _q_of(spec_or_q)
    n = q + 1
    if not 0 <= t <= n:
        raise ValueError(f"t={t} out of range [0, {n}]")
    return comb(n, t) * Fraction(1, q) ** t * Fraction(q - 1, q) ** (n - t)


def poisson_pmf(k: int) -> float:
    """Poisson(1) mass at k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return exp(-1.0) / factorial(k)


def _central_moments_binomial(n: int, p: Fraction, k_max: int) -> list[Fraction]:
    """Exact central moments mu_0..mu_k of Binomial(n, p) by the recursion
    mu_{r+1} = p(1-p) (n r mu_{r-1} + d mu_r / dp), with mu_r kept as a
    polynomial in p."""
    # polynomials in p with Fraction coefficients, low degree first
    def times_scalar(poly, c):
        return [a * c for a in poly]

    def add_(a, b):
        m = max(len(a), len(b))
        a = a + [Fraction(0)] * (m - len(a))
        b = b + [Fraction(0)] * (m - len(b))
        return [x + y for x, y in zip(a, b)]

    def mul_(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out

    def deriv(a):
        return [i * a[i] for i in range(1, len(a))]

    def evalp(a, x):
        acc = Fraction(0)
        for c in reversed(a):
            acc = acc * x + c
        return acc

    pq = [Fraction(0), Fraction(1), Fraction(-1)]  # p - p^2
    mus = [[Fraction(1)], [Fraction(0)]]  # mu_0, mu_1 as polys in p
    for r in range(1, k_max):
        nxt = mul_(pq, add_(times_scalar(mus[r - 1], Fraction(n * r)), deriv(mus[r])))
        mus.append(nxt)
    return [evalp(m, p) for m in mus[: k_max + 1]]


def model_moment(spec_or_q, k: int) -> Fraction:
    """k-th central moment of the point-count model sum, scaled by
    (q+1)^(-k/2).

    The model is q^2+q+1 i.i.d. indicators with success probability
    (q+1)/(q^2+q+1).  The scaled value is rational exactly when k is even,
    the moment vanishes, or q+1 is a perfect square; otherwise the scale
    sqrt(q+1)^k is irrational and a ValueError is raised.
    """
    q = _q_of(spec_or_q)
    if not 0 <= k <= 8:
        raise ValueError("model_moment supports 0 <= k <= 8")
    n = q * q + q + 1
    p = Fraction(q + 1, n)
    mu = _central_moments_binomial(n, p, max(k, 1))[k]
    if k % 2 == 0:
        return mu / Fraction(q + 1) ** (k // 2)
    if mu == 0:
        return Fraction(0)
    r = isqrt(q + 1)
    if r * r == q + 1:
        return mu / Fraction(r) ** k
    raise ValueError(f"odd-order scaled moment is irrational for q={q}")


def model_moment_float(spec_or_q, k: int) -> float:
    """Float version of model_moment, defined for every k <= 8."""
    q = _q_of(spec_or_q)
    if not 0 <= k <= 8:
        raise ValueError("model_moment supports 0 <= k <= 8")
    n = q * q + q + 1
    p = Fraction(q + 1, n)
    mu = _central_moments_binomial(n, p, max(k, 1))[k]
    return float(mu) / float(q + 1) ** (k / 2)


def nu_ratio(spec_or_q, t: int) -> Fraction:
    """(1 - 1/q^2)^t (1 + 1/(q^3-1))^(q^2+q+1)."""
    q = _q_of(spec_or_q)
    n = q * q + q + 1
    if not 0 <= t <= n:
        raise ValueError(f"t={t} out of range [0, {n}]")
    return Fraction(q * q - 1, q * q) ** t * Fraction(q ** 3, q ** 3 - 1) ** n


def conic_blocking_proportion(spec_or_q) -> Fraction:
    """Exact proportion of blocking conics among all of S_2.

    Blocking conics are exactly the products of two F_q-lines (distinct or
    repeated) together with the zero polynomial:
    ((1/2) L (L-1) + L) (q-1) + 1 over q^6, with L = q^2+q+1 line choices.
    """
    q = _q_of(spec_or_q)
    L = q * q + q + 1
    numerator = (Fraction(L * (L - 1), 2) + L) * (q - 1) + 1
    return Fraction(numerator, q ** 6)


def k_point_line_density(k: int) -> float:
    """Limiting density 1/(e k!) of lines meeting a curve in exactly k
    rational points."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1.0 / (e * factorial(k))


def derangement_ratio(d: int) -> Fraction:
    """!d / d! = sum_{i=0..d} (-1)^i / i!, exact."""
    if d < 0:
        raise ValueError("d must be >= 0")
    return sum(Fraction((-1) ** i, factorial(i)) for i in range(d + 1))


def min_nontrivial_blocking_bound(spec_or_q) -> int:
    """Strongest applicable ceiling-rounded lower bound on the size of a
    nontrivial blocking set.

    Cases: q + sqrt(q) + 1 always; 3(q+1)/2 for prime q > 2; and
    q + 1 + c_p q^(2/3) for odd extension degree, with c_2 = c_3 = 2^(-1/3)
    and c_p = 1 for p > 3.  The Baer-subplane-avoiding refinements are not
    applied since all nontrivial blocking sets are being bounded.
    """
    q = _q_of(spec_or_q)
    p = 2
    while q % p:
        p += 1
    r = 0
    m = q
    while m > 1:
        m //= p
        r += 1
    bounds = []
    s = isqrt(q)
    ceil_sqrt = s if s * s == q else s + 1
    bounds.append(q + 1 + ceil_sqrt)
    if r == 1 and p > 2:
        bounds.append((3 * (q + 1) + 1) // 2)
    if r % 2 == 1:
        if p <= 3:
            # ceil((q^2 / 2)^(1/3)): smallest m with 2 m^3 >= q^2
            m = 1
            while 2 * m ** 3 < q * q:
                m += 1
        else:
            m = 1
            while m ** 3 < q * q:
                m += 1
        bounds.append(q + 1 + m)
    return max(bounds)
