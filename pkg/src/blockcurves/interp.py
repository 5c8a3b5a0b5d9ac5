"""Interpolation rank: point-evaluation conditions on degree-d curves.

Passing through k distinct points imposes linearly independent conditions
once d >= min(k-1, 2q-1); this module builds the k x C(d+2,2) evaluation
matrix and computes its rank over F_q by Gaussian elimination with
first-nonzero pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend, gf, pg2, poly
from ._rng import Stream
from .gf import FieldSpec


@dataclass(frozen=True)
class EvalMatrix:
    q: int
    d: int
    k: int
    rows: tuple[tuple[int, ...], ...]  # one row per point, length C(d+2,2)


def evaluation_matrix(spec: FieldSpec, points, d: int) -> EvalMatrix:
    """Row r = all degree-d monomials evaluated at points[r] (normalized)."""
    coords = [p.coords if isinstance(p, pg2.ProjPoint) else tuple(p) for p in points]
    if len(set(coords)) != len(coords):
        raise ValueError("points must be distinct")
    t = gf.tables(spec)
    rows = []
    for (x, y, z) in coords:
        px = [1] * (d + 1)
        py = [1] * (d + 1)
        pz = [1] * (d + 1)
        for e in range(1, d + 1):
            px[e] = t.mul(px[e - 1], x)
            py[e] = t.mul(py[e - 1], y)
            pz[e] = t.mul(pz[e - 1], z)
        rows.append(
            tuple(
                t.mul(t.mul(px[i], py[j]), pz[d - i - j])
                for (i, j) in poly.monomial_exponents(d)
            )
        )
    return EvalMatrix(spec.q, d, len(rows), tuple(rows))


def rank_mod_q(spec: FieldSpec, m: EvalMatrix) -> int:
    if m.k == 0:
        return 0
    arr = np.array(m.rows, dtype=np.int32)
    return backend.impl.rank_gf(arr, backend.field_ctx(spec))


def check_independence(spec: FieldSpec, d: int, points) -> bool:
    """True iff the k point conditions are independent (rank = k).

    Guaranteed true once d >= min(k-1, 2q-1): through any k-1 of the
    points one can place line products (or the vanishing-except-one form)
    missing the k-th, so the conditions never collapse.
    """
    n_pts = spec.q * spec.q + spec.q + 1
    if len(points) > n_pts:
        raise ValueError(f"cannot have {len(points)} distinct points in PG(2,{spec.q})")
    m = evaluation_matrix(spec, points, d)
    return rank_mod_q(spec, m) == m.k


def random_trial(spec: FieldSpec, rng: Stream, k_max: int = 20) -> tuple[int, int, bool]:
    """One randomized (k, d) independence trial at d = min(k-1, 2q-1).

    Returns (k, d, independent)."""
    pts = pg2.point_list(spec)
    n = len(pts)
    k = 1 + rng.below(min(k_max, n))
    chosen_idx = []
    seen = set()
    while len(chosen_idx) < k:
        i = rng.below(n)
        if i not in seen:
            seen.add(i)
            chosen_idx.append(i)
    d = min(k - 1, 2 * spec.q - 1)
    if d < 1:
        d = 1
    chosen = [pts[i] for i in chosen_idx]
    return k, d, check_independence(spec, d, chosen)
