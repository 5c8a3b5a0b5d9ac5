from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockcurves import gf, pg2


@pytest.mark.parametrize("pn,count", [((2, 1), 7), ((3, 1), 13), ((2, 2), 21)])
def test_point_counts(pn, count):
    spec = gf.make_field(*pn)
    assert len(pg2.enumerate_points(spec)) == count
    assert len(pg2.enumerate_lines(spec)) == count


def test_points_normalized_and_sorted(F3):
    pts = pg2.enumerate_points(F3)
    for p in pts:
        nz = next(c for c in p.coords if c)
        assert nz == 1
    assert [p.coords for p in pts] == sorted(p.coords for p in pts)
    assert [p.index for p in pts] == list(range(13))


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_lines_have_q_plus_1_points(pn):
    spec = gf.make_field(*pn)
    for l in pg2.enumerate_lines(spec):
        assert l.mask.bit_count() == spec.q + 1


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2)])
def test_two_lines_meet_once(pn):
    spec = gf.make_field(*pn)
    lines = pg2.enumerate_lines(spec)
    for l1, l2 in combinations(lines, 2):
        assert (l1.mask & l2.mask).bit_count() == 1


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2), (7, 1), (3, 2)])
def test_plane_parameters(pn):
    spec = gf.make_field(*pn)
    q = spec.q
    pl = pg2.plane(spec)
    assert pl.n_points == q * q + q + 1
    # q+1 lines through each point; two points determine one line
    for through in pl.lines_through_point:
        assert through.bit_count() == q + 1
    for a, b in combinations(range(pl.n_points), 2):
        common = pl.lines_through_point[a] & pl.lines_through_point[b]
        assert common.bit_count() == 1


def test_pencil_through_point(F3):
    pl = pg2.plane(F3)
    p = pl.point_index[(0, 0, 1)]
    count = sum(1 for l in pl.lines if (l.mask >> p) & 1)
    assert count == F3.q + 1


def test_is_blocking_basics(F2):
    pl = pg2.plane(F2)
    assert pg2.is_blocking(pl.full_mask, pl.lines)
    line = pl.lines[0]
    assert pg2.is_blocking(line.mask, pl.lines)
    assert not pg2.is_blocking(pl.full_mask & ~line.mask, pl.lines)
    assert not pg2.is_blocking(0, pl.lines)


def test_is_trivial_blocking_basics(F2):
    pl = pg2.plane(F2)
    assert pg2.is_trivial_blocking(pl.lines[3].mask, pl.lines)
    assert not pg2.is_trivial_blocking(0, pl.lines)


def test_baer_subplane_is_nontrivial_blocking(F4):
    pl = pg2.plane(F4)
    subs = pg2.baer_subplanes(F4)
    for s in subs[:25]:
        assert pg2.is_blocking(s, pl.lines)
        assert not pg2.is_trivial_blocking(s, pl.lines)


def test_baer_subplanes_q4_structure(F4):
    subs = pg2.baer_subplanes(F4)
    assert len(subs) == 360  # q^{3/2}(q^{3/2}+1)(q+1) = 8*9*5
    pl = pg2.plane(F4)
    for s in subs:
        assert s.bit_count() == 7
        # any line meets the subplane in 1 or sqrt(q)+1 = 3 points, and any
        # two subplane points lie on a 3-point secant
        for l in pl.lines:
            assert (s & l.mask).bit_count() in (1, 3)
    s0 = subs[0]
    idxs = [i for i in range(pl.n_points) if (s0 >> i) & 1]
    for a, b in combinations(idxs, 2):
        common = pl.lines_through_point[a] & pl.lines_through_point[b]
        line = pl.lines[common.bit_length() - 1]
        assert (s0 & line.mask).bit_count() == 3


def test_baer_subplanes_rejects_non_square(F3):
    with pytest.raises(ValueError):
        pg2.baer_subplanes(F3)


def test_baer_subplanes_guard_large_square():
    F9 = gf.make_field(3, 2)
    with pytest.raises(ValueError):
        pg2.baer_subplanes(F9)


@given(st.integers(0, (1 << 13) - 1))
@settings(max_examples=300, deadline=None)
def test_blocking_equals_complement_check(mask):
    spec = gf.make_field(3, 1)
    pl = pg2.plane(spec)
    assert pg2.is_blocking(mask, pl.lines) == (not pg2.complement_has_full_line(mask, pl))


@given(st.integers(0, (1 << 13) - 1))
@settings(max_examples=300, deadline=None)
def test_trivially_blocking_implies_blocking(mask):
    spec = gf.make_field(3, 1)
    pl = pg2.plane(spec)
    if pg2.is_trivial_blocking(mask, pl.lines):
        assert pg2.is_blocking(mask, pl.lines)


def test_normalize_rejects_zero(F3):
    with pytest.raises(ValueError):
        pg2.normalize(F3, (0, 0, 0))
