"""Homogeneous trivariate polynomials over F_q and the univariate kernel.

A degree-d curve is a coefficient vector of length C(d+2,2) under the
monomial order x^i y^j z^(d-i-j), (i,j) lexicographic ascending.  The zero
polynomial is allowed and its curve is the whole plane (it is blocking and
not smooth); the counting engines rely on that convention.

The univariate layer (gcd, resultant, squarefree part, factorization)
works on low-degree-first int lists through the backend kernels and is the
workhorse of the smoothness decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import backend, gf, pg2
from ._rng import Stream
from .gf import FieldSpec
from .pg2 import ProjLine, ProjPoint


def n_monomials(d: int) -> int:
    return comb(d + 2, 2)


@lru_cache(maxsize=None)
def monomial_exponents(d: int) -> tuple[tuple[int, int], ...]:
    """(i, j) pairs in lexicographic order; the z-exponent is d - i - j."""
    return tuple((i, j) for i in range(d + 1) for j in range(d + 1 - i))


def monomial_index(d: int, i: int, j: int) -> int:
    return i * (d + 1) - i * (i - 1) // 2 + j


@dataclass(frozen=True)
class HomogPoly:
    spec: FieldSpec
    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != n_monomials(self.d):
            raise ValueError(
                f"degree {self.d} needs {n_monomials(self.d)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def zero_poly(spec: FieldSpec, d: int) -> HomogPoly:
    return HomogPoly(spec, d, (0,) * n_monomials(d))


def from_dict(spec: FieldSpec, d: int, terms: dict[tuple[int, int], int]) -> HomogPoly:
    coeffs = [0] * n_monomials(d)
    for (i, j), c in terms.items():
        coeffs[monomial_index(d, i, j)] = c
    return HomogPoly(spec, d, tuple(coeffs))


def poly_add(F: HomogPoly, G: HomogPoly) -> HomogPoly:
    t = gf.tables(F.spec)
    return HomogPoly(F.spec, F.d, tuple(t.add(a, b) for a, b in zip(F.coeffs, G.coeffs)))


def poly_scale(F: HomogPoly, c: int) -> HomogPoly:
    t = gf.tables(F.spec)
    return HomogPoly(F.spec, F.d, tuple(t.mul(c, a) for a in F.coeffs))


def poly_neg(F: HomogPoly) -> HomogPoly:
    t = gf.tables(F.spec)
    return HomogPoly(F.spec, F.d, tuple(t.neg(a) for a in F.coeffs))


def poly_sub(F: HomogPoly, G: HomogPoly) -> HomogPoly:
    return poly_add(F, poly_neg(G))


def poly_mul(F: HomogPoly, G: HomogPoly) -> HomogPoly:
    t = gf.tables(F.spec)
    d = F.d + G.d
    out = [0] * n_monomials(d)
    eF = monomial_exponents(F.d)
    eG = monomial_exponents(G.d)
    for a, (i1, j1) in zip(F.coeffs, eF):
        if a:
            for b, (i2, j2) in zip(G.coeffs, eG):
                if b:
                    k = monomial_index(d, i1 + i2, j1 + j2)
                    out[k] = t.add(out[k], t.mul(a, b))
    return HomogPoly(F.spec, d, tuple(out))


def poly_pow(F: HomogPoly, e: int) -> HomogPoly:
    if e == 0:
        return HomogPoly(F.spec, 0, (1,))
    out = F
    for _ in range(e - 1):
        out = poly_mul(out, F)
    return out


def linear_form(spec: FieldSpec, abc: tuple[int, int, int]) -> HomogPoly:
    """a*x + b*y + c*z as a degree-1 HomogPoly."""
    a, b, c = abc
    return from_dict(spec, 1, {(1, 0): a, (0, 1): b, (0, 0): c})


def evaluate(F: HomogPoly, P) -> int:
    """Value at the normalized representative of P (point or coord triple)."""
    coords = P.coords if isinstance(P, ProjPoint) else P
    t = gf.tables(F.spec)
    x, y, z = coords
    d = F.d
    px = [1] * (d + 1)
    py = [1] * (d + 1)
    pz = [1] * (d + 1)
    for e in range(1, d + 1):
        px[e] = t.mul(px[e - 1], x)
        py[e] = t.mul(py[e - 1], y)
        pz[e] = t.mul(pz[e - 1], z)
    acc = 0
    for c, (i, j) in zip(F.coeffs, monomial_exponents(d)):
        if c:
            acc = t.add(acc, t.mul(t.mul(c, px[i]), t.mul(py[j], pz[d - i - j])))
    return acc


@lru_cache(maxsize=None)
def monomial_matrix(spec: FieldSpec, d: int) -> np.ndarray:
    """(P x N) uint16 matrix of monomial values at every plane point."""
    points = pg2.point_list(spec)
    add_t, mul_t, _, _ = gf.tables(spec).np_tables()
    xs = np.array([p.coords[0] for p in points], dtype=np.intp)
    ys = np.array([p.coords[1] for p in points], dtype=np.intp)
    zs = np.array([p.coords[2] for p in points], dtype=np.intp)
    P = len(points)
    ones = np.ones(P, dtype=np.intp)
    powx = [ones]
    powy = [ones]
    powz = [ones]
    for _ in range(d):
        powx.append(mul_t[powx[-1], xs].astype(np.intp))
        powy.append(mul_t[powy[-1], ys].astype(np.intp))
        powz.append(mul_t[powz[-1], zs].astype(np.intp))
    cols = []
    for i, j in monomial_exponents(d):
        cols.append(mul_t[mul_t[powx[i], powy[j]], powz[d - i - j]])
    M = np.column_stack(cols).astype(np.uint16)
    M.setflags(write=False)
    return M


def point_set(F: HomogPoly) -> int:
    """Bitset of F_q-rational points of C_F; the whole plane for F = 0."""
    npts = len(pg2.point_list(F.spec))
    if F.is_zero():
        return (1 << npts) - 1
    add_t, mul_t, _, _ = gf.tables(F.spec).np_tables()
    M = monomial_matrix(F.spec, F.d)
    acc = np.zeros(npts, dtype=np.intp)
    for j, c in enumerate(F.coeffs):
        if c:
            acc = add_t[acc, mul_t[c, M[:, j]].astype(np.intp)].astype(np.intp)
    mask = 0
    for idx in np.flatnonzero(acc == 0):
        mask |= 1 << int(idx)
    return mask


def partial(F: HomogPoly, var: str) -> HomogPoly:
    """Formal partial derivative; degree drops by one, coefficients mod p."""
    if F.d < 1:
        raise ValueError("cannot differentiate degree 0")
    t = gf.tables(F.spec)
    p = F.spec.p
    d = F.d
    out = [0] * n_monomials(d - 1)
    for c, (i, j) in zip(F.coeffs, monomial_exponents(d)):
        if not c:
            continue
        k = d - i - j
        if var == "x" and i > 0:
            m = i % p
            if m:
                out[monomial_index(d - 1, i - 1, j)] = t.add(
                    out[monomial_index(d - 1, i - 1, j)], t.mul(c, m)
                )
        elif var == "y" and j > 0:
            m = j % p
            if m:
                out[monomial_index(d - 1, i, j - 1)] = t.add(
                    out[monomial_index(d - 1, i, j - 1)], t.mul(c, m)
                )
        elif var == "z" and k > 0:
            m = k % p
            if m:
                out[monomial_index(d - 1, i, j)] = t.add(
                    out[monomial_index(d - 1, i, j)], t.mul(c, m)
                )
    return HomogPoly(F.spec, d - 1, tuple(out))


def compose_linear(F: HomogPoly, mat) -> HomogPoly:
    """F(mat . (x,y,z)): substitute each variable by a linear form.

    `mat` is a 3x3 row matrix over the field: row r gives the linear form
    substituted for the r-th variable.
    """
    spec = F.spec
    d = F.d
    lx = linear_form(spec, tuple(mat[0]))
    ly = linear_form(spec, tuple(mat[1]))
    lz = linear_form(spec, tuple(mat[2]))
    powx: list[HomogPoly] = [HomogPoly(spec, 0, (1,))]
    powy: list[HomogPoly] = [HomogPoly(spec, 0, (1,))]
    powz: list[HomogPoly] = [HomogPoly(spec, 0, (1,))]
    for _ in range(d):
        powx.append(poly_mul(powx[-1], lx))
        powy.append(poly_mul(powy[-1], ly))
        powz.append(poly_mul(powz[-1], lz))
    t = gf.tables(spec)
    out = [0] * n_monomials(d)
    for c, (i, j) in zip(F.coeffs, monomial_exponents(d)):
        if not c:
            continue
        term = poly_mul(poly_mul(powx[i], powy[j]), powz[d - i - j])
        for k, tc in enumerate(term.coeffs):
            if tc:
                out[k] = t.add(out[k], t.mul(c, tc))
    return HomogPoly(spec, d, tuple(out))


def mat3_inv(spec: FieldSpec, mat):
    """Inverse of a 3x3 matrix over F_q via the adjugate."""
    t = gf.tables(spec)

    def det2(a, b, c, d):
        return t.add(t.mul(a, d), t.neg(t.mul(b, c)))

    m = mat
    cof = [[0] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            r1, r2 = [i for i in range(3) if i != r]
            c1, c2 = [i for i in range(3) if i != c]
            minor = det2(m[r1][c1], m[r1][c2], m[r2][c1], m[r2][c2])
            cof[r][c] = minor if (r + c) % 2 == 0 else t.neg(minor)
    det = t.add(
        t.add(t.mul(m[0][0], cof[0][0]), t.mul(m[0][1], cof[0][1])),
        t.mul(m[0][2], cof[0][2]),
    )
    if det == 0:
        raise ValueError("matrix not invertible")
    di = t.inv(det)
    return [[t.mul(di, cof[c][r]) for c in range(3)] for r in range(3)]


def homma_kim(spec: FieldSpec, d: int, target: ProjPoint) -> HomogPoly:
    """Degree-d form vanishing at every F_q-point except `target` (d >= 2q-1).

    Built as u^(d-2q+2) (v^(q-1) - u^(q-1)) (w^(q-1) - u^(q-1)) where
    (u, v, w) are the rows of the inverse of a change of coordinates taking
    the first standard basis vector to `target`.
    """
    q = spec.q
    if d < 2 * q - 1:
        raise ValueError(f"homma_kim needs d >= 2q-1 = {2 * q - 1}, got {d}")
    coords = target.coords if isinstance(target, ProjPoint) else target
    k = next(i for i, c in enumerate(coords) if c)
    cols = [list(coords)]
    for i in range(3):
        if i != k:
            e = [0, 0, 0]
            e[i] = 1
            cols.append(e)
    A = [[cols[c][r] for c in range(3)] for r in range(3)]  # columns -> matrix
    Ainv = mat3_inv(spec, A)
    lu = linear_form(spec, tuple(Ainv[0]))
    lv = linear_form(spec, tuple(Ainv[1]))
    lw = linear_form(spec, tuple(Ainv[2]))
    uq = poly_pow(lu, q - 1)
    G = poly_mul(poly_sub(poly_pow(lv, q - 1), uq), poly_sub(poly_pow(lw, q - 1), uq))
    e = d - (2 * q - 2)
    if e:
        G = poly_mul(poly_pow(lu, e), G)
    return G


def random_poly(spec: FieldSpec, d: int, stream: Stream) -> HomogPoly:
    """Uniform over all q^N coefficient vectors (zero polynomial included)."""
    q = spec.q
    return HomogPoly(spec, d, tuple(stream.below(q) for _ in range(n_monomials(d))))


# ---------------------------------------------------------------------------
# restriction to a line

def restrict_to_line(F: HomogPoly, L: ProjLine) -> "UniPoly":
    """Binary form of F on the canonical parametrization of L.

    L is parametrized by s*P0 + t*P1 where P0, P1 are its two smallest-index
    points; the returned UniPoly holds (a_0, ..., a_d) with a_i the
    coefficient of s^(d-i) t^i.  Roots t in F_q give intersection points
    P0 + t*P1; the parameter at infinity (point P1) is a zero exactly when
    the stripped degree is < d (or the restriction is identically zero).
    """
    spec = F.spec
    pl = pg2.plane(spec)
    idxs = []
    m = L.mask
    while m and len(idxs) < 2:
        low = m & -m
        idxs.append(low.bit_length() - 1)
        m ^= low
    P0 = pl.points[idxs[0]].coords
    P1 = pl.points[idxs[1]].coords
    t = gf.tables(spec)
    d = F.d

    def binmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = t.add(out[i + j], t.mul(ai, bj))
        return out

    base = [[P0[v], P1[v]] for v in range(3)]
    pows = []
    for v in range(3):
        cur = [[1]]
        for _ in range(d):
            cur.append(binmul(cur[-1], base[v]))
        pows.append(cur)
    acc = [0] * (d + 1)
    for c, (i, j) in zip(F.coeffs, monomial_exponents(d)):
        if not c:
            continue
        term = binmul(binmul(pows[0][i], pows[1][j]), pows[2][d - i - j])
        for k, tc in enumerate(term):
            if tc:
                acc[k] = t.add(acc[k], t.mul(c, tc))
    return UniPoly.make(spec, acc)


def line_intersection_count(F: HomogPoly, L: ProjLine) -> int:
    """#(C_F ∩ L)(F_q) via the restriction (q+1 when L is contained)."""
    spec = F.spec
    q = spec.q
    r = restrict_to_line(F, L)
    if r.is_zero():
        return q + 1
    count = sum(1 for x in range(q) if r.eval(x) == 0)
    if r.degree() < F.d:
        count += 1  # the parameter at infinity (point P1)
    return count


# ---------------------------------------------------------------------------
# univariate polynomials

@dataclass(frozen=True)
class UniPoly:
    """Coefficients low degree first, no trailing zeros; () is zero."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    @staticmethod
    def make(spec: FieldSpec, coeffs) -> "UniPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(spec, tuple(cs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x: int) -> int:
        t = gf.tables(self.spec)
        acc = 0
        for c in reversed(self.coeffs):
            acc = t.add(t.mul(acc, x), c)
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        t = gf.tables(self.spec)
        li = t.inv(self.coeffs[-1])
        return UniPoly(self.spec, tuple(t.mul(li, c) for c in self.coeffs))


def _ctx(spec: FieldSpec):
    return backend.field_ctx(spec)


def uni_add(a: UniPoly, b: UniPoly) -> UniPoly:
    t = gf.tables(a.spec)
    n = max(len(a.coeffs), len(b.coeffs))
    ca = list(a.coeffs) + [0] * (n - len(a.coeffs))
    cb = list(b.coeffs) + [0] * (n - len(b.coeffs))
    return UniPoly.make(a.spec, [t.add(x, y) for x, y in zip(ca, cb)])


def uni_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    out = backend.impl.upoly_mul(list(a.coeffs), list(b.coeffs), _ctx(a.spec))
    return UniPoly(a.spec, tuple(out))


def uni_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q, r = backend.impl.upoly_divmod(list(a.coeffs), list(b.coeffs), _ctx(a.spec))
    return UniPoly(a.spec, tuple(q)), UniPoly(a.spec, tuple(r))


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; errors when both inputs are zero."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    out = backend.impl.upoly_gcd(list(a.coeffs), list(b.coeffs), _ctx(a.spec))
    return UniPoly(a.spec, tuple(out))


def uni_resultant(a: UniPoly, b: UniPoly) -> int:
    """Resultant under the Sylvester-matrix sign convention."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return backend.impl.upoly_resultant(list(a.coeffs), list(b.coeffs), _ctx(a.spec))


def uni_pow_mod(a: UniPoly, e: int, m: UniPoly) -> UniPoly:
    ctx = _ctx(a.spec)
    mm = list(m.coeffs)
    result = [1]
    base = backend.impl.upoly_rem(list(a.coeffs), mm, ctx)
    while e:
        if e & 1:
            result = backend.impl.upoly_mulmod(result, base, mm, ctx)
        base = backend.impl.upoly_mulmod(base, base, mm, ctx)
        e >>= 1
    return UniPoly(a.spec, tuple(result))


def _pth_root(a: UniPoly) -> UniPoly:
    """Inverse Frobenius on coefficients for a polynomial in t^p."""
    spec = a.spec
    p = spec.p
    t = gf.tables(spec)
    e = spec.q // p  # x^(q/p) is the inverse of x -> x^p
    out = []
    for i in range(0, len(a.coeffs), p):
        out.append(t.pow(a.coeffs[i], e))
    return UniPoly.make(spec, out)


def uni_derivative(a: UniPoly) -> UniPoly:
    t = gf.tables(a.spec)
    p = a.spec.p
    out = []
    for i in range(1, len(a.coeffs)):
        m = i % p
        out.append(t.mul(a.coeffs[i], m) if m else 0)
    return UniPoly.make(a.spec, out)


def uni_squarefree(a: UniPoly) -> UniPoly:
    """The radical: product of the distinct irreducible factors, monic.

    Char-p aware: factors whose multiplicity is divisible by p hide in
    gcd(a, a') as a perfect p-th power and are recovered via the inverse
    Frobenius on coefficients.
    """
    if a.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if a.degree() == 0:
        return UniPoly(a.spec, (1,))
    da = uni_derivative(a)
    if da.is_zero():
        return uni_squarefree(_pth_root(a))
    g = uni_gcd(a, da)
    w, _ = uni_divmod(a, g)  # each factor with p∤mult, exactly once
    rest = g
    while True:
        h = uni_gcd(rest, w)
        if h.degree() == 0:
            break
        rest, _ = uni_divmod(rest, h)
    # rest = (product of factors with p | mult)^(full power) = u^p
    if rest.degree() > 0:
        return uni_mul(w, uni_squarefree(_pth_root(rest))).monic()
    return w.monic()


def _uni_sub(a: UniPoly, b: UniPoly) -> UniPoly:
    t = gf.tables(a.spec)
    return uni_add(a, UniPoly.make(a.spec, [t.neg(c) for c in b.coeffs]))


def _ddf(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Distinct-degree split of a monic squarefree f: [(product, degree)]."""
    spec = f.spec
    q = spec.q
    tpoly = UniPoly(spec, (0, 1))
    out = []
    cur = f
    h = tpoly
    e = 1
    while cur.degree() >= 2 * e:
        h = uni_pow_mod(h, q, cur)  # t^(q^e) mod cur
        g = uni_gcd(_uni_sub(h, tpoly), cur)
        if g.degree() > 0:
            out.append((g, e))
            cur, _ = uni_divmod(cur, g)
            _, h = uni_divmod(h, cur)  # still t^(q^e) mod the smaller cur
        e += 1
    if cur.degree() > 0:
        out.append((cur, cur.degree()))
    return out


def _edf(f: UniPoly, e: int, rng: Stream, budget: int = 64) -> list[UniPoly]:
    """Equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f whose
    irreducible factors all have degree e."""
    spec = f.spec
    q = spec.q
    if f.degree() == e:
        return [f.monic()]
    p = spec.p
    n_tries = 0
    while True:
        if n_tries >= budget:
            raise RuntimeError("equal-degree splitting retry budget exhausted")
        n_tries += 1
        r = UniPoly.make(spec, [rng.below(q) for _ in range(f.degree())])
        if r.degree() < 1:
            continue
        if p == 2:
            # trace map over F_2 of F_{q^e}
            k = spec.n * e
            ctx = _ctx(spec)
            acc = backend.impl.upoly_rem(list(r.coeffs), list(f.coeffs), ctx)
            total = list(acc)
            cur = list(acc)
            for _ in range(k - 1):
                cur = backend.impl.upoly_mulmod(cur, cur, list(f.coeffs), ctx)
                total = _list_add(total, cur, spec)
            g = uni_gcd(UniPoly.make(spec, total), f) if any(total) else None
        else:
            m = uni_pow_mod(r, (q ** e - 1) // 2, f)
            shifted = uni_add(m, UniPoly(spec, tuple([gf.neg(spec, 1)])))
            g = uni_gcd(shifted, f) if not shifted.is_zero() else None
        if g is None or g.degree() == 0 or g.degree() == f.degree():
            continue
        rest, _ = uni_divmod(f, g)
        return _edf(g, e, rng, budget) + _edf(rest, e, rng, budget)


def _list_add(a, b, spec):
    t = gf.tables(spec)
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    out = [t.add(x, y) for x, y in zip(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out


def uni_factor(a: UniPoly, rng: Stream) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, canonically sorted.

    The product of factor^multiplicity reproduces the input up to its
    leading unit.  Deterministic for a fixed rng seed.
    """
    if a.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    work = a.monic()
    factors: dict[tuple[int, ...], int] = {}
    # radical peeling: each round divides out one power of every live factor
    while work.degree() > 0:
        rad = uni_squarefree(work)
        for g, e in _ddf(rad):
            for irr in _edf(g, e, rng):
                key = tuple(irr.monic().coeffs)
                factors[key] = factors.get(key, 0) + 1
        work, rem = uni_divmod(work, rad)
        if not rem.is_zero():
            raise AssertionError("radical does not divide")
    out = [(UniPoly(a.spec, k), m) for k, m in factors.items()]
    out.sort(key=lambda fm: (fm[0].degree(), fm[0].coeffs))
    return out


def uni_is_irreducible(f: UniPoly) -> bool:
    """No roots in F_{q^e} for e <= deg/2, via gcd with t^(q^e) - t."""
    d = f.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    spec = f.spec
    q = spec.q
    for e in range(1, d // 2 + 1):
        te = uni_pow_mod(UniPoly(spec, (0, 1)), q ** e, f)
        diff = uni_add(te, UniPoly(spec, (0, gf.neg(spec, 1))))
        if diff.is_zero() or uni_gcd(diff, f).degree() > 0:
            return False
    return True


def uni_roots(f: UniPoly) -> list[int]:
    """Distinct roots in F_q, ascending (brute scan; fields are small)."""
    return [x for x in range(f.spec.q) if f.eval(x) == 0]
