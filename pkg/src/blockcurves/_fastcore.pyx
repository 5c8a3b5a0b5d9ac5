# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of `_purecore`: identical semantics, C inner loops.

Every function here must produce bit-identical output to its pure-Python
counterpart; the parity suite in tests/test_backends.py enforces that.
"""

from libc.stdint cimport uint64_t, uint32_t, uint16_t, uint8_t, int32_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

NAME = "compiled"

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15UL


cdef inline uint64_t sm_next(uint64_t* state) noexcept nogil:
    cdef uint64_t z
    state[0] = state[0] + GAMMA
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9UL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBUL
    return z ^ (z >> 31)


cdef inline uint64_t stream_init(uint64_t seed, uint64_t index) noexcept nogil:
    return seed + (index + 1) * GAMMA


cdef inline int draw_below(uint64_t* state, uint64_t q) noexcept nogil:
    # rejection sampling; identical accept set to the pure backend
    cdef uint64_t r = ((<uint64_t>0) - q) % q      # 2^64 mod q
    cdef uint64_t lim = (<uint64_t>0) - r          # wraps to 0 iff r == 0
    cdef uint64_t z
    while True:
        z = sm_next(state)
        if r == 0 or z < lim:
            return <int>(z % q)


cdef class FieldCtx:
    cdef public int q
    cdef uint16_t[:, ::1] add
    cdef uint16_t[:, ::1] mul
    cdef uint16_t[::1] inv
    cdef uint16_t[::1] neg

    def __init__(self, q, add_tab, mul_tab, inv_tab, neg_tab):
        # private writable copies: the gf tables are published read-only
        self.q = q
        self.add = np.array(add_tab, dtype=np.uint16, order="C")
        self.mul = np.array(mul_tab, dtype=np.uint16, order="C")
        self.inv = np.array(inv_tab, dtype=np.uint16, order="C")
        self.neg = np.array(neg_tab, dtype=np.uint16, order="C")


def make_field_ctx(q, add_tab, mul_tab, inv_tab, neg_tab):
    return FieldCtx(q, add_tab, mul_tab, inv_tab, neg_tab)


# ---------------------------------------------------------------------------
# Monte Carlo batches

def mc_plane_batch(seed, i0, n, N, FieldCtx ctx, M, line_points):
    cdef uint16_t[:, ::1] Mv = np.array(M, dtype=np.uint16, order="C")
    cdef int32_t[:, ::1] lp = np.array(line_points, dtype=np.int32, order="C")
    cdef int P = Mv.shape[0]
    cdef int NN = N
    cdef int L = lp.shape[0]
    cdef int lw = lp.shape[1]
    cdef uint64_t seed_ = seed, i0_ = i0
    cdef int n_ = n
    cdef int q = ctx.q
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    pc = np.empty(n, dtype=np.uint32)
    sc = np.empty(n, dtype=np.uint32)
    bl = np.empty(n, dtype=np.uint8)
    cdef uint32_t[::1] pcv = pc
    cdef uint32_t[::1] scv = sc
    cdef uint8_t[::1] blv = bl
    cdef int i, r, j, c, z, npts, skew, hit, li, w
    cdef uint64_t state
    cdef int* coeffs = <int*>malloc(NN * sizeof(int))
    cdef uint8_t* zeros = <uint8_t*>malloc(P * sizeof(uint8_t))
    cdef int acc
    try:
        with nogil:
            for i in range(n_):
                state = stream_init(seed_, i0_ + <uint64_t>i)
                for j in range(NN):
                    coeffs[j] = draw_below(&state, <uint64_t>q)
                npts = 0
                for r in range(P):
                    acc = 0
                    for j in range(NN):
                        c = coeffs[j]
                        if c:
                            acc = add[acc, mul[c, Mv[r, j]]]
                    if acc == 0:
                        zeros[r] = 1
                        npts += 1
                    else:
                        zeros[r] = 0
                skew = 0
                for li in range(L):
                    hit = 0
                    for w in range(lw):
                        if zeros[lp[li, w]]:
                            hit = 1
                            break
                    if hit == 0:
                        skew += 1
                pcv[i] = <uint32_t>npts
                scv[i] = <uint32_t>skew
                blv[i] = 1 if skew == 0 else 0
    finally:
        free(coeffs)
        free(zeros)
    return pc, sc, bl


def mc_line_batch(seed, i0, n, N, FieldCtx ctx, M_line):
    cdef uint16_t[:, ::1] Mv = np.array(M_line, dtype=np.uint16, order="C")
    cdef int P = Mv.shape[0]
    cdef int NN = N
    cdef uint64_t seed_ = seed, i0_ = i0
    cdef int n_ = n
    cdef int q = ctx.q
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    zc = np.empty(n, dtype=np.uint32)
    cdef uint32_t[::1] zcv = zc
    cdef int i, r, j, c, z, acc
    cdef uint64_t state
    cdef int* coeffs = <int*>malloc(NN * sizeof(int))
    try:
        with nogil:
            for i in range(n_):
                state = stream_init(seed_, i0_ + <uint64_t>i)
                for j in range(NN):
                    coeffs[j] = draw_below(&state, <uint64_t>q)
                z = 0
                for r in range(P):
                    acc = 0
                    for j in range(NN):
                        c = coeffs[j]
                        if c:
                            acc = add[acc, mul[c, Mv[r, j]]]
                    if acc == 0:
                        z += 1
                zcv[i] = <uint32_t>z
    finally:
        free(coeffs)
    return zc


def mc_pair_batch(seed, i0, n, N, FieldCtx ctx, M, line_points):
    cdef uint16_t[:, ::1] Mv = np.array(M, dtype=np.uint16, order="C")
    cdef int32_t[:, ::1] lp = np.array(line_points, dtype=np.int32, order="C")
    cdef int NN = N
    cdef int L = lp.shape[0]
    cdef int lw = lp.shape[1]
    cdef uint64_t seed_ = seed, i0_ = i0
    cdef int n_ = n
    cdef int q = ctx.q
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    zc = np.empty(n, dtype=np.uint32)
    cdef uint32_t[::1] zcv = zc
    cdef int i, r, j, c, z, li, acc, w
    cdef uint64_t state
    cdef int* coeffs = <int*>malloc(NN * sizeof(int))
    try:
        with nogil:
            for i in range(n_):
                state = stream_init(seed_, i0_ + <uint64_t>i)
                li = draw_below(&state, <uint64_t>L)
                for j in range(NN):
                    coeffs[j] = draw_below(&state, <uint64_t>q)
                z = 0
                for w in range(lw):
                    r = lp[li, w]
                    acc = 0
                    for j in range(NN):
                        c = coeffs[j]
                        if c:
                            acc = add[acc, mul[c, Mv[r, j]]]
                    if acc == 0:
                        z += 1
                zcv[i] = <uint32_t>z
    finally:
        free(coeffs)
    return zc


def mc_unipoly_batch(seed, i0, n, FieldCtx ctx):
    cdef int q = ctx.q
    cdef uint64_t seed_ = seed, i0_ = i0
    cdef int n_ = n
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    rc = np.empty(n, dtype=np.uint32)
    cdef uint32_t[::1] rcv = rc
    cdef int i, j, x, roots, acc
    cdef uint64_t state
    cdef int* coeffs = <int*>malloc(q * sizeof(int))
    try:
        with nogil:
            for i in range(n_):
                state = stream_init(seed_, i0_ + <uint64_t>i)
                for j in range(q):
                    coeffs[j] = draw_below(&state, <uint64_t>q)
                roots = 0
                for x in range(q):
                    acc = 0
                    for j in range(q - 1, -1, -1):
                        acc = add[mul[acc, x], coeffs[j]]
                    if acc == 0:
                        roots += 1
                rcv[i] = <uint32_t>roots
    finally:
        free(coeffs)
    return rc


# ---------------------------------------------------------------------------
# batch evaluation

def eval_masks_batch(coeff_rows, FieldCtx ctx, M):
    cdef uint16_t[:, ::1] Mv = np.array(M, dtype=np.uint16, order="C")
    cdef int32_t[:, ::1] cv = np.array(coeff_rows, dtype=np.int32, order="C")
    cdef int P = Mv.shape[0]
    if P > 64:
        raise ValueError("eval_masks_batch requires at most 64 points")
    cdef int S = cv.shape[0]
    cdef int NN = cv.shape[1]
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    masks = np.empty(S, dtype=np.uint64)
    cdef uint64_t[::1] mv = masks
    cdef int s, r, j, c, acc
    cdef uint64_t mask
    with nogil:
        for s in range(S):
            mask = 0
            for r in range(P):
                acc = 0
                for j in range(NN):
                    c = cv[s, j]
                    if c:
                        acc = add[acc, mul[c, Mv[r, j]]]
                if acc == 0:
                    mask |= (<uint64_t>1) << r
            mv[s] = mask
    return masks


def common_zero_scan(coeff_rows, FieldCtx ctx, M):
    cdef uint16_t[:, ::1] Mv = np.array(M, dtype=np.uint16, order="C")
    cdef int32_t[:, ::1] cv = np.array(coeff_rows, dtype=np.int32, order="C")
    cdef int P = Mv.shape[0]
    cdef int G = cv.shape[0]
    cdef int NN = cv.shape[1]
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef int r, g, j, c, acc, all_zero, found = -1
    with nogil:
        for r in range(P):
            all_zero = 1
            for g in range(G):
                acc = 0
                for j in range(NN):
                    c = cv[g, j]
                    if c:
                        acc = add[acc, mul[c, Mv[r, j]]]
                if acc != 0:
                    all_zero = 0
                    break
            if all_zero:
                found = r
                break
    return found


# ---------------------------------------------------------------------------
# exact subset walks

cdef void _ut_walk(uint64_t* masks, int L, uint64_t full, int npts,
                   uint64_t* binom, int bstride, uint64_t* grid, int gstride,
                   int idx, int k, uint64_t u) noexcept nogil:
    cdef int rem, j
    if u == full:
        rem = L - idx
        for j in range(rem + 1):
            grid[(k + j) * gstride + npts] += binom[rem * bstride + j]
        return
    if idx == L:
        grid[k * gstride + __builtin_popcountll(u)] += 1
        return
    _ut_walk(masks, L, full, npts, binom, bstride, grid, gstride, idx + 1, k, u)
    _ut_walk(masks, L, full, npts, binom, bstride, grid, gstride,
             idx + 1, k + 1, u | masks[idx])


def union_table_walk(line_masks, n_points, prefix_bits, prefix_len, binom):
    cdef uint64_t[::1] masks = np.array(line_masks, dtype=np.uint64, order="C")
    cdef uint64_t[:, ::1] bv = np.array(binom, dtype=np.uint64, order="C")
    cdef int L = masks.shape[0]
    cdef int npts = n_points
    cdef uint64_t full = ((<uint64_t>1) << npts) - 1
    cdef uint64_t pbits = prefix_bits
    cdef int plen = prefix_len
    out = np.zeros((L + 1) * (npts + 1), dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef int gstride = npts + 1
    cdef int bstride = bv.shape[1]
    cdef int j, k0 = 0
    cdef uint64_t u0 = 0
    for j in range(plen):
        if (pbits >> j) & 1:
            k0 += 1
            u0 |= masks[j]
    with nogil:
        _ut_walk(&masks[0], L, full, npts, &bv[0, 0], bstride, &ov[0], gstride,
                 plen, k0, u0)
    return out


cdef void _census_walk(uint64_t* pmasks, int P, uint64_t full, int line_size,
                       int* cnt, uint64_t* suffix, uint64_t* binom, int bstride,
                       uint64_t* by_size, uint64_t* nontrivial,
                       int idx, int t, uint64_t hit, int nfull) noexcept nogil:
    cdef int rem, j, filled, li
    cdef uint64_t m, low
    if nfull > 0:
        rem = P - idx
        for j in range(rem + 1):
            by_size[t + j] += binom[rem * bstride + j]
        return
    if (hit | suffix[idx]) != full:
        return
    if idx == P:
        if hit == full:
            by_size[t] += 1
            nontrivial[t] += 1
        return
    _census_walk(pmasks, P, full, line_size, cnt, suffix, binom, bstride,
                 by_size, nontrivial, idx + 1, t, hit, nfull)
    filled = 0
    m = pmasks[idx]
    while m:
        low = m & (~m + 1)
        li = __builtin_popcountll(low - 1)
        cnt[li] += 1
        if cnt[li] == line_size:
            filled += 1
        m ^= low
    _census_walk(pmasks, P, full, line_size, cnt, suffix, binom, bstride,
                 by_size, nontrivial, idx + 1, t + 1, hit | pmasks[idx], nfull + filled)
    m = pmasks[idx]
    while m:
        low = m & (~m + 1)
        cnt[__builtin_popcountll(low - 1)] -= 1
        m ^= low


def census_walk(point_line_masks, line_size, n_lines, prefix_bits, prefix_len, binom):
    cdef uint64_t[::1] pmasks = np.array(point_line_masks, dtype=np.uint64, order="C")
    cdef uint64_t[:, ::1] bv = np.array(binom, dtype=np.uint64, order="C")
    cdef int P = pmasks.shape[0]
    cdef int ls = line_size
    cdef int L = n_lines
    cdef uint64_t full = ((<uint64_t>1) << L) - 1
    cdef uint64_t pbits = prefix_bits
    cdef int plen = prefix_len
    by_size = np.zeros(P + 1, dtype=np.uint64)
    nontrivial = np.zeros(P + 1, dtype=np.uint64)
    cdef uint64_t[::1] bsv = by_size
    cdef uint64_t[::1] ntv = nontrivial
    cdef int bstride = bv.shape[1]
    suffix_np = np.zeros(P + 1, dtype=np.uint64)
    cdef uint64_t[::1] suffix = suffix_np
    cdef int i, j, li, t0 = 0, nfull0 = 0
    cdef uint64_t hit0 = 0, m, low
    cdef int* cnt = <int*>malloc(L * sizeof(int))
    memset(cnt, 0, L * sizeof(int))
    try:
        for i in range(P - 1, -1, -1):
            suffix[i] = suffix[i + 1] | pmasks[i]
        for j in range(plen):
            if (pbits >> j) & 1:
                m = pmasks[j]
                while m:
                    low = m & (~m + 1)
                    li = __builtin_popcountll(low - 1)
                    cnt[li] += 1
                    if cnt[li] == ls:
                        nfull0 += 1
                    m ^= low
                hit0 |= pmasks[j]
                t0 += 1
        with nogil:
            _census_walk(&pmasks[0], P, full, ls, cnt, &suffix[0], &bv[0, 0],
                         bstride, &bsv[0], &ntv[0], plen, t0, hit0, nfull0)
    finally:
        free(cnt)
    return by_size, nontrivial


# ---------------------------------------------------------------------------
# linear algebra

def rank_gf(rows_arr, FieldCtx ctx):
    cdef int32_t[:, ::1] rows = np.array(rows_arr, dtype=np.int32, order="C")
    cdef int k = rows.shape[0]
    cdef int ncols = rows.shape[1] if k else 0
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    cdef int rank = 0, col = 0, piv, r, c, v, factor, piv_inv, pv, tmp
    if k == 0:
        return 0
    with nogil:
        while rank < k and col < ncols:
            piv = -1
            for r in range(rank, k):
                if rows[r, col]:
                    piv = r
                    break
            if piv < 0:
                col += 1
                continue
            if piv != rank:
                for c in range(ncols):
                    tmp = rows[rank, c]
                    rows[rank, c] = rows[piv, c]
                    rows[piv, c] = tmp
            piv_inv = inv[rows[rank, col]]
            for r in range(rank + 1, k):
                v = rows[r, col]
                if v:
                    factor = mul[v, piv_inv]
                    for c in range(col, ncols):
                        pv = rows[rank, c]
                        if pv:
                            rows[r, c] = add[rows[r, c], neg[mul[factor, pv]]]
            rank += 1
            col += 1
    return rank


# ---------------------------------------------------------------------------
# univariate polynomial kernel (C cores + list wrappers)

cdef int _strip_len(int* a, int n) noexcept nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef int _rem_core(int* a, int na, int* b, int nb,
                   uint16_t[:, ::1] add, uint16_t[:, ::1] mul,
                   uint16_t[::1] inv, uint16_t[::1] neg) noexcept nogil:
    """In-place remainder a mod b; returns the stripped length of a."""
    cdef int db = nb - 1
    cdef int shift, i, top, f, bi
    cdef int lead_inv = inv[b[nb - 1]]
    if na - 1 < db:
        return _strip_len(a, na)
    for shift in range(na - 1 - db, -1, -1):
        top = a[shift + db]
        if top:
            f = mul[top, lead_inv]
            for i in range(db + 1):
                bi = b[i]
                if bi:
                    a[shift + i] = add[a[shift + i], neg[mul[f, bi]]]
    return _strip_len(a, na)


def upoly_mul(a, b, FieldCtx ctx):
    if not a or not b:
        return []
    cdef int na = len(a), nb = len(b)
    cdef int* av = <int*>malloc(na * sizeof(int))
    cdef int* bv = <int*>malloc(nb * sizeof(int))
    cdef int* ov = <int*>malloc((na + nb - 1) * sizeof(int))
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef int i, j, ai, bj
    for i in range(na):
        av[i] = a[i]
    for j in range(nb):
        bv[j] = b[j]
    try:
        with nogil:
            for i in range(na + nb - 1):
                ov[i] = 0
            for i in range(na):
                ai = av[i]
                if ai:
                    for j in range(nb):
                        bj = bv[j]
                        if bj:
                            ov[i + j] = add[ov[i + j], mul[ai, bj]]
        n = _strip_len(ov, na + nb - 1)
        return [ov[i] for i in range(n)]
    finally:
        free(av)
        free(bv)
        free(ov)


def upoly_divmod(a, b, FieldCtx ctx):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef int na = len(a), nb = len(b)
    cdef int db = nb - 1
    if na - 1 < db:
        return [], list(a)
    cdef int* rem = <int*>malloc(na * sizeof(int))
    cdef int* bv = <int*>malloc(nb * sizeof(int))
    cdef int* quot = <int*>malloc((na - db) * sizeof(int))
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    cdef int i, shift, top, f, bi, lead_inv
    for i in range(na):
        rem[i] = a[i]
    for i in range(nb):
        bv[i] = b[i]
    try:
        with nogil:
            for i in range(na - db):
                quot[i] = 0
            lead_inv = inv[bv[nb - 1]]
            for shift in range(na - 1 - db, -1, -1):
                top = rem[shift + db]
                if top:
                    f = mul[top, lead_inv]
                    quot[shift] = f
                    for i in range(db + 1):
                        bi = bv[i]
                        if bi:
                            rem[shift + i] = add[rem[shift + i], neg[mul[f, bi]]]
        nq = _strip_len(quot, na - db)
        nr = _strip_len(rem, na)
        return [quot[i] for i in range(nq)], [rem[i] for i in range(nr)]
    finally:
        free(rem)
        free(bv)
        free(quot)


def upoly_rem(a, b, FieldCtx ctx):
    return upoly_divmod(a, b, ctx)[1]


def upoly_monic(a, FieldCtx ctx):
    cdef int n = len(a)
    if n == 0 or a[n - 1] == 1:
        return list(a)
    cdef int li = ctx.inv[a[n - 1]]
    cdef uint16_t[:, ::1] mul = ctx.mul
    return [mul[li, c] for c in a]


def upoly_gcd(a, b, FieldCtx ctx):
    cdef int cap = max(len(a), len(b), 1)
    cdef int* av = <int*>malloc(cap * sizeof(int))
    cdef int* bv = <int*>malloc(cap * sizeof(int))
    cdef int* tswap
    cdef int na = len(a), nb = len(b), nr, i
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    for i in range(na):
        av[i] = a[i]
    for i in range(nb):
        bv[i] = b[i]
    try:
        with nogil:
            while nb > 0:
                nr = _rem_core(av, na, bv, nb, add, mul, inv, neg)
                tswap = av
                av = bv
                bv = tswap
                na = nb
                nb = nr
        out = [av[i] for i in range(na)]
    finally:
        free(av)
        free(bv)
    return upoly_monic(out, ctx)


def upoly_mulmod(a, b, m, FieldCtx ctx):
    return upoly_rem(upoly_mul(a, b, ctx), m, ctx)


cdef int _resultant_core(int* a, int na, int* b, int nb,
                         uint16_t[:, ::1] add, uint16_t[:, ::1] mul,
                         uint16_t[::1] inv, uint16_t[::1] neg) noexcept nogil:
    """Resultant of stripped nonzero a, b (Sylvester convention).

    Mutates both buffers (they alternate as remainders)."""
    cdef int res = 1
    cdef int sign_neg = 0
    cdef int da, db, dr, lc, e, i, c
    cdef int* tswap
    while nb - 1 > 0:
        da = na - 1
        db = nb - 1
        dr = _rem_core(a, na, b, nb, add, mul, inv, neg) - 1
        if dr < 0:
            return 0
        if (da * db) % 2 == 1:
            sign_neg = 1 - sign_neg
        lc = b[nb - 1]
        for e in range(da - dr):
            res = mul[res, lc]
        tswap = a
        a = b
        b = tswap
        na = nb
        nb = dr + 1
    c = b[0]
    for i in range(na - 1):
        res = mul[res, c]
    if sign_neg:
        return neg[res]
    return res


def upoly_resultant(a, b, FieldCtx ctx):
    if not a or not b:
        return 0
    cdef int na = len(a), nb = len(b)
    cdef int cap = max(na, nb)
    cdef int* av = <int*>malloc(cap * sizeof(int))
    cdef int* bv = <int*>malloc(cap * sizeof(int))
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    cdef int i, res
    for i in range(na):
        av[i] = a[i]
    for i in range(nb):
        bv[i] = b[i]
    try:
        with nogil:
            res = _resultant_core(av, na, bv, nb, add, mul, inv, neg)
        return res
    finally:
        free(av)
        free(bv)


def upoly_eval(a, x, FieldCtx ctx):
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef int acc = 0
    cdef int xi = x
    for c in reversed(a):
        acc = add[mul[acc, xi], <int>c]
    return acc


def upoly_eval_many(a, xs, FieldCtx ctx):
    return [upoly_eval(a, x, ctx) for x in xs]


def upoly_interp(xs, ys, FieldCtx ctx):
    """Newton interpolation; mirrors the pure version exactly."""
    cdef int n = len(xs)
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    cdef int* poly = <int*>malloc((n + 1) * sizeof(int))
    cdef int* basis = <int*>malloc((n + 1) * sizeof(int))
    cdef int* nbasis = <int*>malloc((n + 1) * sizeof(int))
    cdef int npoly = 0, nbas = 1, i, j, xi, yi, val, diff, denom, cc, nxi
    basis[0] = 1
    try:
        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            # val = poly(xi), denom = basis(xi) by Horner
            val = 0
            for j in range(npoly - 1, -1, -1):
                val = add[mul[val, xi], poly[j]]
            diff = add[yi, neg[val]]
            if diff:
                denom = 0
                for j in range(nbas - 1, -1, -1):
                    denom = add[mul[denom, xi], basis[j]]
                cc = mul[diff, inv[denom]]
                if npoly < nbas:
                    for j in range(npoly, nbas):
                        poly[j] = 0
                    npoly = nbas
                for j in range(nbas):
                    poly[j] = add[poly[j], mul[cc, basis[j]]]
            # basis *= (t - xi)
            nxi = neg[xi]
            nbasis[0] = mul[basis[0], nxi]
            for j in range(1, nbas):
                nbasis[j] = add[basis[j - 1], mul[basis[j], nxi]]
            nbasis[nbas] = basis[nbas - 1]
            for j in range(nbas + 1):
                basis[j] = nbasis[j]
            nbas += 1
        npoly = _strip_len(poly, npoly)
        return [poly[i] for i in range(npoly)]
    finally:
        free(poly)
        free(basis)
        free(nbasis)


def biv_resultant_sweep(A, B, xs, FieldCtx ctx):
    """Resultant_y(A, B) specialised at each x; rows are x-polys per y-power."""
    cdef int32_t[:, ::1] Av = np.array(A, dtype=np.int32, order="C")
    cdef int32_t[:, ::1] Bv = np.array(B, dtype=np.int32, order="C")
    cdef int32_t[::1] xv = np.array(xs, dtype=np.int32, order="C")
    cdef int nyA = Av.shape[0], nxA = Av.shape[1]
    cdef int nyB = Bv.shape[0], nxB = Bv.shape[1]
    cdef int nx = xv.shape[0]
    cdef uint16_t[:, ::1] add = ctx.add
    cdef uint16_t[:, ::1] mul = ctx.mul
    cdef uint16_t[::1] inv = ctx.inv
    cdef uint16_t[::1] neg = ctx.neg
    out = np.empty(nx, dtype=np.int32)
    cdef int32_t[::1] ov = out
    cdef int cap = max(nyA, nyB, 1)
    cdef int* ay = <int*>malloc(cap * sizeof(int))
    cdef int* by = <int*>malloc(cap * sizeof(int))
    cdef int i, r, j, x, acc, nay, nby
    try:
        with nogil:
            for i in range(nx):
                x = xv[i]
                for r in range(nyA):
                    acc = 0
                    for j in range(nxA - 1, -1, -1):
                        acc = add[mul[acc, x], Av[r, j]]
                    ay[r] = acc
                nay = _strip_len(ay, nyA)
                for r in range(nyB):
                    acc = 0
                    for j in range(nxB - 1, -1, -1):
                        acc = add[mul[acc, x], Bv[r, j]]
                    by[r] = acc
                nby = _strip_len(by, nyB)
                if nay == 0 or nby == 0:
                    ov[i] = 0
                else:
                    ov[i] = _resultant_core(ay, nay, by, nby, add, mul, inv, neg)
    finally:
        free(ay)
        free(by)
    return out
