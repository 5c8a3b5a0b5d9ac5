"""Decide whether a plane curve is geometrically smooth.

`is_smooth_exact` settles the projective system F = F_x = F_y = F_z = 0
over the algebraic closure by elimination: the line z = 0 is checked via a
univariate gcd, and on the affine chart z = 1 a linear change of (x, y)
makes every generator regular in y, after which y is eliminated by
resultants against one regular generator.  The gcd h of the eliminants is
factored and each residue field F_q[x]/(pi) is searched for a common
y-root of all generators (a nonconstant gcd in y); arithmetic in the
residue field is done directly on polynomials mod pi, so no bound on the
degree of pi is needed.

F itself is always kept among the generators: in characteristic p | d the
Euler relation degenerates, so the partials alone do not imply F = 0.

`is_smooth_oracle` is the brute-force ground truth: it enumerates the
points of P^2(F_{q^m}) for m = 1..m_max, which is exact once m_max reaches
(d-1)^2, the field-of-definition bound for isolated singular points
(recorded assumption; non-reduced curves are caught at small m anyway).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend, gf, pg2, poly
from ._rng import Stream
from .gf import FieldSpec
from .poly import HomogPoly, UniPoly

DEFAULT_SEED = 0x5E00D1
_PRESCAN_POINT_LIMIT = 700_000


class RetriesExhausted(RuntimeError):
    """Coordinate-change budget exhausted; caller may fall back to the oracle."""


@dataclass(frozen=True)
class SmoothnessVerdict:
    smooth: bool
    witness: tuple[int, tuple[int, int, int]] | None  # (m, coords over F_{q^m})
    method: str  # "exact-elimination" | "oracle-enumeration"


def _generators(F: HomogPoly) -> list[HomogPoly]:
    return [F, poly.partial(F, "x"), poly.partial(F, "y"), poly.partial(F, "z")]


def _ext_field(spec: FieldSpec, m: int) -> FieldSpec:
    return gf.make_field(spec.p, spec.n * m)


def _embed_map(src: FieldSpec, dst: FieldSpec) -> list[int]:
    return [gf.embed(src, x, dst) for x in range(src.q)]


def _zero_flags(G: HomogPoly, E: FieldSpec, emb: list[int]) -> np.ndarray:
    """Boolean array: does G (coefficients embedded into E) vanish at each
    point of P^2(E)?"""
    add_t, mul_t, _, _ = gf.tables(E).np_tables()
    M = poly.monomial_matrix(E, G.d)
    acc = np.zeros(M.shape[0], dtype=np.intp)
    for j, c in enumerate(G.coeffs):
        if c:
            acc = add_t[acc, mul_t[emb[c], M[:, j]].astype(np.intp)].astype(np.intp)
    return acc == 0


def _scan_singular_point(gens: list[HomogPoly], spec: FieldSpec, m: int):
    """First common zero of the generators over F_{q^m}, or None."""
    E = _ext_field(spec, m)
    if len(pg2.point_list(E)) > _PRESCAN_POINT_LIMIT:
        return None
    emb = _embed_map(spec, E)
    flags = None
    for G in gens:
        if G.is_zero():
            continue
        zf = _zero_flags(G, E, emb)
        flags = zf if flags is None else (flags & zf)
        if not flags.any():
            return None
    idx = int(np.flatnonzero(flags)[0])
    return pg2.point_list(E)[idx].coords


def _find_curve_point(F: HomogPoly, m_limit: int = 6):
    """Some point of C_F over a small extension (for non-reduced witnesses)."""
    spec = F.spec
    for m in range(1, m_limit + 1):
        if spec.p ** (spec.n * m) > gf.SIZE_GUARD:
            break
        E = _ext_field(spec, m)
        if len(pg2.point_list(E)) > _PRESCAN_POINT_LIMIT:
            break
        emb = _embed_map(spec, E)
        flags = _zero_flags(F, E, emb)
        nz = np.flatnonzero(flags)
        if len(nz):
            return (m, pg2.point_list(E)[int(nz[0])].coords)
    return None


# ---------------------------------------------------------------------------
# bivariate helpers: rows[r] = x-coefficient list of y^r, over a table field

def _strip_list(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _biv_strip(rows):
    rows = [_strip_list(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _biv_from_homog(F: HomogPoly):
    """Dehomogenize at z = 1."""
    rows = [[0] * (F.d + 1) for _ in range(F.d + 1)]
    for c, (i, j) in zip(F.coeffs, poly.monomial_exponents(F.d)):
        if c:
            rows[j][i] = c
    return _biv_strip(rows)


def _biv_embed(rows, emb):
    return [[emb[c] for c in r] for r in rows]


def _biv_is_const(rows):
    return len(rows) == 1 and len(rows[0]) <= 1


def _biv_change(rows, T, t):
    """Substitute (x, y) -> (T00 x + T01 y, T10 x + T11 y); `t` = gf tables."""
    if not rows:
        return []
    d = max(len(r) - 1 + yr for yr, r in enumerate(rows) if r)

    def conv(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = t.add(out[i + j], t.mul(ai, bj))
        return out

    powx = [[1]]
    powy = [[1]]
    for _ in range(d):
        powx.append(conv(powx[-1], [T[0][0], T[0][1]]))
        powy.append(conv(powy[-1], [T[1][0], T[1][1]]))
    out = [[0] * (d + 1) for _ in range(d + 1)]
    for yr, row in enumerate(rows):
        for xe, c in enumerate(row):
            if not c:
                continue
            form = conv(powx[xe], powy[yr])  # binary form, entry r = y-degree r
            e = xe + yr
            for r, fc in enumerate(form):
                if fc:
                    out[r][e - r] = t.add(out[r][e - r], t.mul(c, fc))
    return _biv_strip(out)


def _biv_ydeg(rows) -> int:
    return len(rows) - 1


def _biv_xdeg(rows) -> int:
    return max((len(r) - 1 for r in rows if r), default=0)


def _biv_regular(rows) -> bool:
    """Leading y-coefficient is a nonzero constant (and y actually occurs)."""
    return len(rows) >= 2 and len(rows[-1]) == 1


def _biv_rect(rows, width) -> np.ndarray:
    arr = np.zeros((len(rows), width), dtype=np.int32)
    for r, row in enumerate(rows):
        arr[r, : len(row)] = row
    return arr


# ---------------------------------------------------------------------------
# residue-field arithmetic: K = W[t]/(pi), elements are reduced coeff lists

def _usub(a, b, t):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    out = [t.add(x, t.neg(y)) for x, y in zip(a, b)]
    return _strip_list(out)


def _k_inv(a, pi, impl, ctx, t):
    """Inverse of a nonzero residue mod the irreducible pi."""
    r0, s0 = list(pi), []
    r1, s1 = list(a), [1]
    while r1:
        qq, rr = impl.upoly_divmod(r0, r1, ctx)
        s = _usub(s0, impl.upoly_mul(qq, s1, ctx), t)
        r0, s0, r1, s1 = r1, s1, rr, s
    c_inv = t.inv(r0[0])
    out = [t.mul(c_inv, c) for c in s0]
    return impl.upoly_rem(out, pi, ctx)


def _ygcd_pair(A, B, pi, impl, ctx, t):
    A = [list(c) for c in A]
    B = [list(c) for c in B]

    def strip(P):
        while P and not P[-1]:
            P.pop()
        return P

    A, B = strip(A), strip(B)
    while B:
        lead_inv = _k_inv(B[-1], pi, impl, ctx, t)
        R = [list(c) for c in A]
        while len(R) >= len(B):
            top = R[-1]
            if top:
                f = impl.upoly_rem(impl.upoly_mul(top, lead_inv, ctx), pi, ctx)
                shift = len(R) - len(B)
                for i, bc in enumerate(B):
                    if bc:
                        prod = impl.upoly_rem(impl.upoly_mul(f, bc, ctx), pi, ctx)
                        R[shift + i] = _usub(R[shift + i], prod, t)
            R.pop()
            strip_top = R
            while strip_top and not strip_top[-1]:
                strip_top.pop()
            R = strip_top
        A, B = B, R
    return A


def _common_yroot_degree(ypolys, pi, impl, ctx, t) -> int:
    """Degree in y of gcd over K of the nonzero specialisations."""
    g = None
    for yp in ypolys:
        yp = [list(c) for c in yp]
        while yp and not yp[-1]:
            yp.pop()
        if not yp:
            continue
        g = yp if g is None else _ygcd_pair(g, yp, pi, impl, ctx, t)
        if g is not None and len(g) == 1:
            return 0
    if g is None:
        # every generator vanishes identically mod pi
        return 1
    return len(g) - 1


# ---------------------------------------------------------------------------
# main decisions

def is_smooth_oracle(F: HomogPoly, m_max: int | None = None) -> SmoothnessVerdict:
    """Brute-force smoothness by scanning P^2(F_{q^m}) for m = 1..m_max.

    Exact when m_max >= (d-1)^2 (the default).  Guarded by field and point
    count limits; only meant for tiny (q, d).
    """
    if F.is_zero():
        raise ValueError("smoothness of the zero polynomial is undefined")
    d = F.d
    spec = F.spec
    if m_max is None:
        m_max = max(1, (d - 1) * (d - 1))
    gens = _generators(F)
    if all(g.is_zero() for g in gens[1:]):
        w = _find_curve_point(F)
        if w is None:
            raise RuntimeError("no witness found for a non-reduced curve")
        return SmoothnessVerdict(False, w, "oracle-enumeration")
    for m in range(1, m_max + 1):
        if spec.p ** (spec.n * m) > gf.SIZE_GUARD:
            raise ValueError(f"oracle field F_{{q^{m}}} exceeds the size guard")
        E = _ext_field(spec, m)
        if len(pg2.point_list(E)) > _PRESCAN_POINT_LIMIT:
            raise ValueError(f"oracle plane over F_{{q^{m}}} exceeds the point guard")
        w = _scan_singular_point(gens, spec, m)
        if w is not None:
            return SmoothnessVerdict(False, (m, w), "oracle-enumeration")
    return SmoothnessVerdict(True, None, "oracle-enumeration")


def _sample_invertible(rng: Stream, sub: FieldSpec):
    t = gf.tables(sub)
    for _ in range(256):
        a, b, c, d = (rng.below(sub.q) for _ in range(4))
        if t.add(t.mul(a, d), t.neg(t.mul(b, c))) != 0:
            return (a, b, c, d)
    raise AssertionError("could not sample an invertible 2x2 matrix")


def is_smooth_exact(F: HomogPoly, rng: Stream | None = None,
                    max_attempts: int = 64) -> SmoothnessVerdict:
    """Elimination-based smoothness decision (see module docstring).

    Raises RetriesExhausted when 64 coordinate changes fail to produce
    regular generators with usable eliminants (the caller may fall back to
    the oracle); that happens systematically for non-reduced curves whose
    repeated factor survives every coordinate change.
    """
    if F.is_zero():
        raise ValueError("smoothness of the zero polynomial is undefined")
    if rng is None:
        rng = Stream(DEFAULT_SEED)
    spec = F.spec
    q = spec.q
    d = F.d
    gens = _generators(F)

    if all(g.is_zero() for g in gens[1:]):
        # p-th power: non-reduced, hence singular along the whole support
        w = _find_curve_point(F)
        if w is None:
            raise RuntimeError("no witness found for a non-reduced curve")
        return SmoothnessVerdict(False, w, "exact-elimination")

    # cheap complete scans of low-degree points (also yields nice witnesses)
    for m in (1, 2):
        if spec.p ** (spec.n * m) <= gf.SIZE_GUARD:
            w = _scan_singular_point(gens, spec, m)
            if w is not None:
                return SmoothnessVerdict(False, (m, w), "exact-elimination")

    # the line z = 0: common zeros of the four restrictions
    line_polys = []
    for G in gens:
        coeffs = [0] * (G.d + 1)
        for c, (i, j) in zip(G.coeffs, poly.monomial_exponents(G.d)):
            if c and i + j == G.d:
                coeffs[j] = c
        line_polys.append(UniPoly.make(spec, coeffs))
    nonzero_line = [u for u in line_polys if not u.is_zero()]
    if nonzero_line:
        g_line = nonzero_line[0]
        for u in nonzero_line[1:]:
            g_line = poly.uni_gcd(g_line, u)
            if g_line.degree() == 0:
                break
        if g_line.degree() > 0:
            # rational roots were already caught by the m <= 2 scans
            w = _line_witness(spec, g_line)
            return SmoothnessVerdict(False, w, "exact-elimination")
    # else: all four vanish identically on z=0; the rational point scan
    # above has already reported the singular point

    # dehomogenized at z=1; F is nonzero so the list is never empty
    biv0 = [_biv_from_homog(G) for G in gens if not G.is_zero()]
    if any(_biv_is_const(b) for b in biv0):
        return SmoothnessVerdict(True, None, "exact-elimination")

    bound = 2 * d * d + 1
    emb_cache: dict[int, tuple] = {}

    base_w = 1
    while q ** base_w < bound:
        base_w += 1

    for attempt in range(max_attempts):
        # spec schedule: F_q for 8 attempts, then F_{q^2}; if the union of
        # bad directions covers those small projective lines (possible when
        # 4d exceeds q^2+1), escalate to the working field itself, which has
        # more directions than the generators have roots
        if attempt < 8:
            e_change = 1
        elif attempt < 32:
            e_change = 2
        else:
            e_change = base_w
        w_deg = e_change
        while q ** w_deg < bound:
            w_deg += e_change
        if spec.p ** (spec.n * w_deg) > 4096:
            raise ValueError(
                f"working field F_{{q^{w_deg}}} exceeds the kernel table guard"
            )
        if w_deg not in emb_cache:
            W = _ext_field(spec, w_deg)
            ctx = backend.field_ctx(W)
            emb = _embed_map(spec, W)
            tW = gf.tables(W)
            emb_cache[w_deg] = (W, ctx, emb, tW, [_biv_embed(b, emb) for b in biv0])
        W, ctx, emb, tW, bivW = emb_cache[w_deg]
        impl = backend.impl

        if attempt == 0:
            T = ((1, 0), (0, 1))
        else:
            sub = _ext_field(spec, e_change)
            a, b, c_, d_ = _sample_invertible(rng, sub)
            se = _embed_map(sub, W) if e_change != w_deg else list(range(sub.q))
            T = ((se[a], se[b]), (se[c_], se[d_]))
        gensT = [_biv_change(bw, T, tW) for bw in bivW]
        gensT = [g for g in gensT if g]
        if not all(_biv_regular(g) for g in gensT):
            continue

        order = sorted(range(len(gensT)), key=lambda i: (_biv_ydeg(gensT[i]), i))
        G = gensT[order[0]]
        others = [gensT[i] for i in order[1:]]
        Rs = []
        for H in others:
            npts = _biv_ydeg(G) * _biv_xdeg(H) + _biv_ydeg(H) * _biv_xdeg(G) + 1
            xs = np.arange(npts, dtype=np.int32)
            Ga = _biv_rect(G, _biv_xdeg(G) + 1)
            Ha = _biv_rect(H, _biv_xdeg(H) + 1)
            vals = impl.biv_resultant_sweep(Ga, Ha, xs, ctx)
            R = impl.upoly_interp(list(range(npts)), list(vals), ctx)
            if R:
                Rs.append(R)
        if not Rs:
            continue  # all eliminants vanished: shared factor, re-randomize
        h = Rs[0]
        for R in Rs[1:]:
            h = impl.upoly_gcd(h, R, ctx)
            if len(h) == 1:
                break
        if len(h) <= 1:
            return SmoothnessVerdict(True, None, "exact-elimination")

        factor_rng = Stream(DEFAULT_SEED ^ (attempt + 1))
        hP = UniPoly(W, tuple(h))
        factors = sorted(
            {f.coeffs for f, _ in poly.uni_factor(hP, factor_rng)},
            key=lambda cs: (len(cs), cs),
        )
        for pi_coeffs in factors:
            pi = list(pi_coeffs)
            ypolys = [[impl.upoly_rem(row, pi, ctx) for row in gen] for gen in gensT]
            if _common_yroot_degree(ypolys, pi, impl, ctx, tW) >= 1:
                w = _chart_witness(F, gens)
                return SmoothnessVerdict(False, w, "exact-elimination")
        return SmoothnessVerdict(True, None, "exact-elimination")

    raise RetriesExhausted(f"no usable coordinate change in {max_attempts} attempts")


def _line_witness(spec: FieldSpec, g_line: UniPoly):
    """Witness on z=0 from the smallest-degree factor of the line gcd."""
    try:
        factors = poly.uni_factor(g_line, Stream(DEFAULT_SEED ^ 0xA5))
    except Exception:
        return None
    factors.sort(key=lambda fm: (fm[0].degree(), fm[0].coeffs))
    pi = factors[0][0]
    m = pi.degree()
    if spec.p ** (spec.n * m) > gf.SIZE_GUARD:
        return None
    E = _ext_field(spec, m)
    emb = _embed_map(spec, E)
    tE = gf.tables(E)
    for x0 in range(E.q):
        acc = 0
        for c in reversed(pi.coeffs):
            acc = tE.add(tE.mul(acc, x0), emb[c])
        if acc == 0:
            return (m, (1, x0, 0))
    return None


def _chart_witness(F: HomogPoly, gens):
    """Best-effort explicit singular point over a small extension."""
    spec = F.spec
    for m in (3, 4):
        if spec.p ** (spec.n * m) > gf.SIZE_GUARD:
            break
        E = _ext_field(spec, m)
        if len(pg2.point_list(E)) > _PRESCAN_POINT_LIMIT:
            break
        w = _scan_singular_point(gens, spec, m)
        if w is not None:
            return (m, w)
    return None


def is_smooth(F: HomogPoly, rng: Stream | None = None) -> SmoothnessVerdict:
    """Exact elimination with oracle fallback on retry exhaustion."""
    try:
        return is_smooth_exact(F, rng)
    except RetriesExhausted:
        return is_smooth_oracle(F)


def witness_satisfies(F: HomogPoly, verdict: SmoothnessVerdict) -> bool:
    """Independently re-evaluate F = F_x = F_y = F_z = 0 at the witness."""
    if verdict.witness is None:
        return False
    m, coords = verdict.witness
    spec = F.spec
    E = _ext_field(spec, m)
    emb = _embed_map(spec, E)
    tE = gf.tables(E)
    for G in _generators(F):
        if G.is_zero():
            continue
        x, y, z = coords
        acc = 0
        for c, (i, j) in zip(G.coeffs, poly.monomial_exponents(G.d)):
            if c:
                term = tE.mul(
                    tE.pow(x, i), tE.mul(tE.pow(y, j), tE.pow(z, G.d - i - j))
                )
                acc = tE.add(acc, tE.mul(emb[c], term))
        if acc != 0:
            return False
    return True
