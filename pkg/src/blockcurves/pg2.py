"""The projective plane PG(2,q): points, lines, incidence, blocking sets.

Points and lines are normalized coordinate triples (first nonzero entry 1),
enumerated in a fixed lexicographic order so tables and shard boundaries
are reproducible.  Point sets are plain int bitsets over the point indices;
`popcount` is `int.bit_count()`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import isqrt

import numpy as np

from . import gf
from .gf import FieldSpec


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, int, int]
    index: int


@dataclass(frozen=True)
class ProjLine:
    coeffs: tuple[int, int, int]
    index: int
    mask: int  # incidence bitset over point indices


def n_points(spec: FieldSpec) -> int:
    return spec.q * spec.q + spec.q + 1


def normalize(spec: FieldSpec, v: tuple[int, int, int]) -> tuple[int, int, int]:
    """Scale so the first nonzero coordinate is 1; errors on (0,0,0)."""
    t = gf.tables(spec)
    for c in v:
        if c:
            iv = t.inv(c)
            return tuple(t.mul(iv, x) for x in v)
    raise ValueError("the zero triple is not a projective point")


@lru_cache(maxsize=None)
def point_list(spec: FieldSpec) -> tuple[ProjPoint, ...]:
    """All q^2+q+1 points, one normalized representative each, in the
    canonical lexicographic coordinate order."""
    q = spec.q
    reps = [(0, 0, 1)]
    reps += [(0, 1, z) for z in range(q)]
    reps += [(1, y, z) for y in range(q) for z in range(q)]
    reps.sort()
    return tuple(ProjPoint(c, i) for i, c in enumerate(reps))


class Plane:
    """Immutable incidence structure of PG(2,q), cached per field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        q = spec.q
        t = gf.tables(spec)
        self.points = point_list(spec)
        reps = [p.coords for p in self.points]
        self.point_index = {p.coords: p.index for p in self.points}
        n = len(reps)
        self.n_points = n
        self.full_mask = (1 << n) - 1
        lines = []
        for i, coef in enumerate(reps):
            a, b, c = coef
            mask = 0
            for pt in self.points:
                x, y, z = pt.coords
                s = t.add(t.add(t.mul(a, x), t.mul(b, y)), t.mul(c, z))
                if s == 0:
                    mask |= 1 << pt.index
            lines.append(ProjLine(coef, i, mask))
        self.lines = tuple(lines)
        self.line_masks = tuple(l.mask for l in lines)
        # per point: bitset of lines through it (dual incidence)
        through = [0] * n
        for l in lines:
            m = l.mask
            while m:
                low = m & -m
                through[low.bit_length() - 1] |= 1 << l.index
                m ^= low
        self.lines_through_point = tuple(through)
        self._line_points = None

    def line_points_array(self) -> np.ndarray:
        """(L x (q+1)) int32 array of point indices per line, row-ordered."""
        if self._line_points is None:
            rows = []
            for l in self.lines:
                idxs = []
                m = l.mask
                while m:
                    low = m & -m
                    idxs.append(low.bit_length() - 1)
                    m ^= low
                rows.append(idxs)
            arr = np.array(rows, dtype=np.int32)
            arr.setflags(write=False)
            self._line_points = arr
        return self._line_points


@lru_cache(maxsize=None)
def plane(spec: FieldSpec) -> Plane:
    return Plane(spec)


def enumerate_points(spec: FieldSpec) -> tuple[ProjPoint, ...]:
    return point_list(spec)


def enumerate_lines(spec: FieldSpec) -> tuple[ProjLine, ...]:
    return plane(spec).lines


def is_blocking(s: int, lines) -> bool:
    """True iff s meets the incidence set of every line."""
    for l in lines:
        if not (s & l.mask):
            return False
    return True


def is_trivial_blocking(s: int, lines) -> bool:
    """True iff s contains all q+1 points of some line."""
    for l in lines:
        if (s & l.mask) == l.mask:
            return True
    return False


def complement_has_full_line(s: int, pl: Plane) -> bool:
    """Independent blocking check: s blocks iff its complement has no line."""
    comp = pl.full_mask & ~s
    for m in pl.line_masks:
        if (comp & m) == m:
            return True
    return False


def baer_subplanes(spec: FieldSpec) -> list[int]:
    """All Baer subplanes of PG(2,q) as point bitsets (q a square).

    Enumerates closures of quadrangles in general position; the closure of
    a quadrangle under join/meet is the subplane it spans, which for proper
    subplanes of PG(2,4) is always Baer.  Brute force is only feasible (and
    only implemented) for q = 4.
    """
    q = spec.q
    r = isqrt(q)
    if r * r != q:
        raise ValueError(f"q={q} is not a square")
    if q > 4:
        raise ValueError("Baer subplane enumeration is only supported for q <= 4")
    pl = plane(spec)
    n = pl.n_points
    # line through each point pair
    line_of = {}
    for l in pl.lines:
        idxs = []
        m = l.mask
        while m:
            low = m & -m
            idxs.append(low.bit_length() - 1)
            m ^= low
        for a, b in combinations(idxs, 2):
            line_of[(a, b)] = l
    target = q + r + 1

    def closure(quad):
        pts = set(quad)
        while True:
            spanned = {line_of[pair].mask for pair in combinations(sorted(pts), 2)}
            new = set()
            for m1, m2 in combinations(spanned, 2):
                inter = m1 & m2
                k = inter.bit_length() - 1
                if inter and k not in pts:
                    new.add(k)
            if not new:
                return frozenset(pts)
            pts |= new
            if len(pts) > target:
                return None

    found = set()
    for quad in combinations(range(n), 4):
        collinear = False
        for tri in combinations(quad, 3):
            a, b, c = tri
            if (line_of[(a, b)].mask >> c) & 1:
                collinear = True
                break
        if collinear:
            continue
        cl = closure(quad)
        if cl is not None and len(cl) == target:
            found.add(cl)
    masks = sorted(sum(1 << i for i in s) for s in found)
    expected = r ** 3 * (r ** 3 + 1) * (q + 1)
    if len(masks) != expected:
        raise AssertionError(f"found {len(masks)} subplanes, expected {expected}")
    return masks
