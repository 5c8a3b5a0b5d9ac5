"""Pure-Python reference implementation of the hot kernels.

`_fastcore` (Cython) mirrors every function here bit-for-bit; `backend`
picks whichever is available.  All randomness comes from the SplitMix64
per-sample streams in `_rng`, so outputs are identical across backends
and independent of how samples are partitioned across threads.

Conventions shared by both backends:
  * field elements are ints in [0, q), arithmetic via dense tables;
  * univariate polynomials are Python lists of ints, lowest degree first,
    with no trailing zeros (the zero polynomial is the empty list);
  * subset-walk bitsets are unsigned 64-bit masks (in-scope walks have at
    most 31 points/lines); samplers that may see larger planes work with
    explicit point-index lists instead.
"""

from __future__ import annotations

import numpy as np

from ._rng import next_u64, stream_state

NAME = "pure"


class FieldCtx:
    """Field arithmetic tables unpacked for tight loops."""

    def __init__(self, q, add_tab, mul_tab, inv_tab, neg_tab):
        self.q = q
        self.add = [list(r) for r in add_tab.tolist()]
        self.mul = [list(r) for r in mul_tab.tolist()]
        self.inv = list(inv_tab.tolist())
        self.neg = list(neg_tab.tolist())


def make_field_ctx(q, add_tab, mul_tab, inv_tab, neg_tab):
    return FieldCtx(q, add_tab, mul_tab, inv_tab, neg_tab)


def _rng_limit(q):
    return (1 << 64) - ((1 << 64) % q)


def _draw_below(state, q, limit):
    while True:
        state, z = next_u64(state)
        if z < limit:
            return state, z % q


# ---------------------------------------------------------------------------
# Monte Carlo batches

def mc_plane_batch(seed, i0, n, N, ctx, M, line_points):
    """Evaluate n random curves at every plane point.

    Sample i uses stream (seed, i0 + i) and draws its N coefficients in
    monomial order.  Returns (point_counts, skew_counts, blocking).
    """
    q = ctx.q
    add, mul = ctx.add, ctx.mul
    rows = [list(r) for r in M.tolist()]
    lines = [list(r) for r in line_points.tolist()]
    P = len(rows)
    limit = _rng_limit(q)
    point_counts = np.empty(n, dtype=np.uint32)
    skew_counts = np.empty(n, dtype=np.uint32)
    blocking = np.empty(n, dtype=np.uint8)
    zeros = [0] * P
    for i in range(n):
        state = stream_state(seed, i0 + i)
        coeffs = []
        for _ in range(N):
            state, c = _draw_below(state, q, limit)
            coeffs.append(c)
        npts = 0
        for r in range(P):
            row = rows[r]
            acc = 0
            for j in range(N):
                c = coeffs[j]
                if c:
                    acc = add[acc][mul[c][row[j]]]
            z = 1 if acc == 0 else 0
            zeros[r] = z
            npts += z
        skew = 0
        for lpts in lines:
            hit = 0
            for r in lpts:
                if zeros[r]:
                    hit = 1
                    break
            if not hit:
                skew += 1
        point_counts[i] = npts
        skew_counts[i] = skew
        blocking[i] = 1 if skew == 0 else 0
    return point_counts, skew_counts, blocking


def mc_line_batch(seed, i0, n, N, ctx, M_line):
    """Zero counts of random curves on one fixed line (rows = its points)."""
    q = ctx.q
    add, mul = ctx.add, ctx.mul
    rows = [list(r) for r in M_line.tolist()]
    limit = _rng_limit(q)
    zero_counts = np.empty(n, dtype=np.uint32)
    for i in range(n):
        state = stream_state(seed, i0 + i)
        coeffs = []
        for _ in range(N):
            state, c = _draw_below(state, q, limit)
            coeffs.append(c)
        z = 0
        for row in rows:
            acc = 0
            for j in range(N):
                c = coeffs[j]
                if c:
                    acc = add[acc][mul[c][row[j]]]
            if acc == 0:
                z += 1
        zero_counts[i] = z
    return zero_counts


def mc_pair_batch(seed, i0, n, N, ctx, M, line_points):
    """Zero counts for (curve, line) pairs; the line index is drawn first."""
    q = ctx.q
    add, mul = ctx.add, ctx.mul
    rows = [list(r) for r in M.tolist()]
    lines = [list(r) for r in line_points.tolist()]
    L = len(lines)
    limit_q = _rng_limit(q)
    limit_l = _rng_limit(L)
    zero_counts = np.empty(n, dtype=np.uint32)
    for i in range(n):
        state = stream_state(seed, i0 + i)
        state, li = _draw_below(state, L, limit_l)
        coeffs = []
        for _ in range(N):
            state, c = _draw_below(state, q, limit_q)
            coeffs.append(c)
        z = 0
        for r in lines[li]:
            row = rows[r]
            acc = 0
            for j in range(N):
                c = coeffs[j]
                if c:
                    acc = add[acc][mul[c][row[j]]]
            if acc == 0:
                z += 1
        zero_counts[i] = z
    return zero_counts


def mc_unipoly_batch(seed, i0, n, ctx):
    """Distinct F_q-roots of uniform degree <= q-1 polynomials (zero incl.)."""
    q = ctx.q
    add, mul = ctx.add, ctx.mul
    limit = _rng_limit(q)
    root_counts = np.empty(n, dtype=np.uint32)
    for i in range(n):
        state = stream_state(seed, i0 + i)
        coeffs = []
        for _ in range(q):
            state, c = _draw_below(state, q, limit)
            coeffs.append(c)
        roots = 0
        for x in range(q):
            acc = 0
            for j in range(q - 1, -1, -1):
                acc = add[mul[acc][x]][coeffs[j]]
            if acc == 0:
                roots += 1
        root_counts[i] = roots
    return root_counts


# ---------------------------------------------------------------------------
# batch evaluation

def eval_masks_batch(coeff_rows, ctx, M):
    """Rational-point bitsets for explicit coefficient vectors (S x N).

    Only valid for planes with at most 64 points (the exact engines).
    """
    add, mul = ctx.add, ctx.mul
    rows = [list(r) for r in M.tolist()]
    P = len(rows)
    if P > 64:
        raise ValueError("eval_masks_batch requires at most 64 points")
    crows = coeff_rows.tolist()
    S = len(crows)
    N = coeff_rows.shape[1]
    masks = np.empty(S, dtype=np.uint64)
    for s in range(S):
        coeffs = crows[s]
        mask = 0
        for r in range(P):
            row = rows[r]
            acc = 0
            for j in range(N):
                c = coeffs[j]
                if c:
                    acc = add[acc][mul[c][row[j]]]
            if acc == 0:
                mask |= 1 << r
        masks[s] = mask
    return masks


def common_zero_scan(coeff_rows, ctx, M):
    """First row index of M where every coefficient vector evaluates to 0,
    or -1.  Used by the smoothness oracle (generators x extension points)."""
    add, mul = ctx.add, ctx.mul
    rows = [list(r) for r in M.tolist()]
    gens = coeff_rows.tolist()
    N = coeff_rows.shape[1]
    for r, row in enumerate(rows):
        all_zero = True
        for coeffs in gens:
            acc = 0
            for j in range(N):
                c = coeffs[j]
                if c:
                    acc = add[acc][mul[c][row[j]]]
            if acc != 0:
                all_zero = False
                break
        if all_zero:
            return r
    return -1


# ---------------------------------------------------------------------------
# exact subset walks

def union_table_walk(line_masks, n_points, prefix_bits, prefix_len, binom):
    """Exact (k lines, |union|) counts over every line subset extending the
    include/exclude prefix.  Returns a flat (L+1) x (n_points+1) u64 grid.

    A subtree whose union already covers the plane is closed out with
    binomial counts instead of being walked.
    """
    masks = list(line_masks.tolist())
    L = len(masks)
    full = (1 << n_points) - 1
    binom = [list(r) for r in binom.tolist()]
    grid = [[0] * (n_points + 1) for _ in range(L + 1)]
    k0, u0 = 0, 0
    for j in range(prefix_len):
        if (prefix_bits >> j) & 1:
            k0 += 1
            u0 |= masks[j]

    def walk(idx, k, u):
        if u == full:
            rem = L - idx
            row = binom[rem]
            grow = grid
            for j in range(rem + 1):
                grow[k + j][n_points] += row[j]
            return
        if idx == L:
            grid[k][bin(u).count("1")] += 1
            return
        walk(idx + 1, k, u)
        walk(idx + 1, k + 1, u | masks[idx])

    walk(prefix_len, k0, u0)
    out = np.zeros((L + 1) * (n_points + 1), dtype=np.uint64)
    for k in range(L + 1):
        base = k * (n_points + 1)
        for t in range(n_points + 1):
            out[base + t] = grid[k][t]
    return out


def census_walk(point_line_masks, line_size, n_lines, prefix_bits, prefix_len, binom):
    """Exact blocking census over point subsets extending a prefix.

    `point_line_masks[i]` is the bitset of lines through point i and
    `line_size` = q+1 points fill a line.  Returns (by_size, nontrivial)
    arrays indexed by subset size.  Prunes subtrees that can no longer
    block and closes out already-trivially-blocking subtrees binomially.
    """
    pmasks = list(point_line_masks.tolist())
    P = len(pmasks)
    full = (1 << n_lines) - 1
    binom = [list(r) for r in binom.tolist()]
    suffix = [0] * (P + 1)
    for i in range(P - 1, -1, -1):
        suffix[i] = suffix[i + 1] | pmasks[i]
    by_size = [0] * (P + 1)
    nontrivial = [0] * (P + 1)
    cnt = [0] * n_lines

    def include(i):
        filled = 0
        m = pmasks[i]
        while m:
            low = m & -m
            li = low.bit_length() - 1
            cnt[li] += 1
            if cnt[li] == line_size:
                filled += 1
            m ^= low
        return filled

    def exclude(i):
        m = pmasks[i]
        while m:
            low = m & -m
            cnt[low.bit_length() - 1] -= 1
            m ^= low

    hit0, nfull0, t0 = 0, 0, 0
    for j in range(prefix_len):
        if (prefix_bits >> j) & 1:
            nfull0 += include(j)
            hit0 |= pmasks[j]
            t0 += 1

    def walk(idx, t, hit, nfull):
        if nfull > 0:
            rem = P - idx
            row = binom[rem]
            for j in range(rem + 1):
                by_size[t + j] += row[j]
            return
        if (hit | suffix[idx]) != full:
            return
        if idx == P:
            if hit == full:
                by_size[t] += 1
                nontrivial[t] += 1
            return
        walk(idx + 1, t, hit, nfull)
        filled = include(idx)
        walk(idx + 1, t + 1, hit | pmasks[idx], nfull + filled)
        exclude(idx)

    walk(prefix_len, t0, hit0, nfull0)
    return np.array(by_size, dtype=np.uint64), np.array(nontrivial, dtype=np.uint64)


# ---------------------------------------------------------------------------
# linear algebra

def rank_gf(rows_arr, ctx):
    """Rank over F_q by Gaussian elimination with first-nonzero pivoting."""
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    rows = [list(r) for r in rows_arr.tolist()]
    k = len(rows)
    if k == 0:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < k and col < ncols:
        piv = -1
        for r in range(rank, k):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        piv_inv = inv[prow[col]]
        for r in range(rank + 1, k):
            v = rows[r][col]
            if v:
                factor = mul[v][piv_inv]
                frow = mul[factor]
                rrow = rows[r]
                for c in range(col, ncols):
                    pv = prow[c]
                    if pv:
                        rrow[c] = add[rrow[c]][neg[frow[pv]]]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# univariate polynomial kernel over table fields
# (lists of ints, low degree first, no trailing zeros)

def _strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_mul(a, b, ctx):
    if not a or not b:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            mrow = mul[ai]
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add[out[i + j]][mrow[bj]]
    return _strip(out)


def upoly_divmod(a, b, ctx):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _strip(rem)
    quot = [0] * (len(rem) - db)
    lead_inv = inv[b[-1]]
    for shift in range(len(rem) - 1 - db, -1, -1):
        top = rem[shift + db]
        if top:
            f = mul[top][lead_inv]
            quot[shift] = f
            frow = mul[f]
            for i in range(db + 1):
                bi = b[i]
                if bi:
                    rem[shift + i] = add[rem[shift + i]][neg[frow[bi]]]
    return _strip(quot), _strip(rem)


def upoly_rem(a, b, ctx):
    return upoly_divmod(a, b, ctx)[1]


def upoly_monic(a, ctx):
    if not a or a[-1] == 1:
        return list(a)
    mul, inv = ctx.mul, ctx.inv
    li = inv[a[-1]]
    lrow = mul[li]
    return [lrow[c] for c in a]


def upoly_gcd(a, b, ctx):
    a, b = list(a), list(b)
    while b:
        a, b = b, upoly_rem(a, b, ctx)
    return upoly_monic(a, ctx)


def upoly_mulmod(a, b, m, ctx):
    return upoly_rem(upoly_mul(a, b, ctx), m, ctx)


def upoly_resultant(a, b, ctx):
    """Resultant under the Sylvester convention, via the Euclidean chain."""
    if not a or not b:
        return 0
    mul, neg = ctx.mul, ctx.neg
    a, b = list(a), list(b)
    res = 1
    sign_neg = False
    while len(b) - 1 > 0:
        da = len(a) - 1
        db = len(b) - 1
        r = upoly_rem(a, b, ctx)
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2 == 1:
            sign_neg = not sign_neg
        lc = b[-1]
        for _ in range(da - dr):
            res = mul[res][lc]
        a, b = b, r
    c = b[0]
    for _ in range(len(a) - 1):
        res = mul[res][c]
    return neg[res] if sign_neg else res


def upoly_eval(a, x, ctx):
    add, mul = ctx.add, ctx.mul
    acc = 0
    for c in reversed(a):
        acc = add[mul[acc][x]][c]
    return acc


def upoly_eval_many(a, xs, ctx):
    return [upoly_eval(a, x, ctx) for x in xs]


def upoly_interp(xs, ys, ctx):
    """Newton interpolation through distinct xs; exact over the field."""
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    poly = []
    basis = [1]
    for xi, yi in zip(xs, ys):
        val = upoly_eval(poly, xi, ctx)
        diff = add[yi][neg[val]]
        if diff:
            denom = upoly_eval(basis, xi, ctx)
            c = mul[diff][inv[denom]]
            crow = mul[c]
            scaled = [crow[bc] for bc in basis]
            if len(poly) < len(scaled):
                poly = poly + [0] * (len(scaled) - len(poly))
            for i, sc in enumerate(scaled):
                poly[i] = add[poly[i]][sc]
        basis = upoly_mul(basis, [neg[xi], 1], ctx)
    return _strip(poly)


def biv_resultant_sweep(A, B, xs, ctx):
    """Resultant_y(A, B) specialised at each x in xs.

    A and B are (deg_y+1) x (deg_x+1) arrays of coefficients: row r is the
    x-polynomial multiplying y^r.  Returns the list of resultant values of
    the specialised univariate polynomials in y.
    """
    arows = [list(r) for r in A.tolist()]
    brows = [list(r) for r in B.tolist()]
    out = []
    for x in xs.tolist():
        ay = _strip([upoly_eval(r, x, ctx) for r in arows])
        by = _strip([upoly_eval(r, x, ctx) for r in brows])
        out.append(upoly_resultant(ay, by, ctx))
    return out
