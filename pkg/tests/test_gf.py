import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockcurves import gf


def test_make_field_prime():
    F2 = gf.make_field(2, 1)
    assert (F2.p, F2.n, F2.q) == (2, 1, 2)


def test_make_field_f4_modulus():
    # t^2 + t + 1 is the only monic irreducible quadratic over F_2
    F4 = gf.make_field(2, 2)
    assert F4.modulus == (1, 1, 1)


def test_make_field_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        gf.make_field(6, 1)


def test_make_field_rejects_bad_degree_and_size():
    with pytest.raises(ValueError):
        gf.make_field(2, 0)
    with pytest.raises(ValueError):
        gf.make_field(2, 21)  # 2^21 > guard


def test_f4_multiplication_table():
    # t * t = t + 1 when the modulus is t^2 + t + 1
    F4 = gf.make_field(2, 2)
    assert gf.mul(F4, 2, 2) == 3


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6)])
def test_char2_self_addition(p, n):
    spec = gf.make_field(p, n)
    assert all(gf.add(spec, a, a) == 0 for a in range(spec.q))


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 4)])
def test_inv_of_one(p, n):
    spec = gf.make_field(p, n)
    assert gf.inv(spec, 1) == 1


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4)])
def test_field_axioms_exhaustive(p, n):
    spec = gf.make_field(p, n)
    q = spec.q
    t = gf.tables(spec)
    els = range(q)
    for a in els:
        assert t.add(a, 0) == a and t.mul(a, 1) == a
        assert t.add(a, t.neg(a)) == 0
        if a:
            assert t.mul(a, t.inv(a)) == 1
        for b in els:
            assert t.add(a, b) == t.add(b, a)
            assert t.mul(a, b) == t.mul(b, a)
    # associativity and distributivity on all triples
    for a in els:
        for b in els:
            ab_add = t.add(a, b)
            ab_mul = t.mul(a, b)
            for c in els:
                assert t.add(ab_add, c) == t.add(a, t.add(b, c))
                assert t.mul(ab_mul, c) == t.mul(a, t.mul(b, c))
                assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))


@pytest.mark.parametrize(
    "p,n", [(2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6), (3, 4)]
)
def test_frobenius_fixed_field(p, n):
    # x^q = x for every x, q <= 64... up to 81
    spec = gf.make_field(p, n)
    t = gf.tables(spec)
    assert all(t.pow(x, spec.q) == x for x in range(spec.q))


def test_pow_negative_exponent():
    F9 = gf.make_field(3, 2)
    t = gf.tables(F9)
    for a in range(1, 9):
        assert t.mul(t.pow(a, -1), a) == 1


def test_inversion_of_zero_raises():
    F3 = gf.make_field(3, 1)
    with pytest.raises(ZeroDivisionError):
        gf.inv(F3, 0)


def test_field_arith_dispatch():
    F4 = gf.make_field(2, 2)
    assert gf.field_arith(F4, "add", 2, 3) == 1
    assert gf.field_arith(F4, "mul", 2, 2) == 3
    assert gf.field_arith(F4, "neg", 3) == 3
    assert gf.field_arith(F4, "inv", 2) == 3
    assert gf.field_arith(F4, "pow", 2, 3) == 1
    with pytest.raises(ValueError):
        gf.field_arith(F4, "div", 1, 2)
    with pytest.raises(ValueError):
        gf.field_arith(F4, "add", 5, 0)


# --- embeddings ---------------------------------------------------------


def test_embed_fixes_identity():
    F2 = gf.make_field(2, 1)
    F4 = gf.make_field(2, 2)
    assert gf.embed(F2, 1, F4) == 1
    assert gf.embed(F2, 0, F4) == 0


def test_embed_homomorphism_f3_to_f9():
    F3 = gf.make_field(3, 1)
    F9 = gf.make_field(3, 2)
    for a in range(3):
        for b in range(3):
            assert gf.embed(F3, gf.mul(F3, a, b), F9) == gf.mul(
                F9, gf.embed(F3, a, F9), gf.embed(F3, b, F9)
            )
            assert gf.embed(F3, gf.add(F3, a, b), F9) == gf.add(
                F9, gf.embed(F3, a, F9), gf.embed(F3, b, F9)
            )


def test_embed_homomorphism_f4_to_f16():
    F4 = gf.make_field(2, 2)
    F16 = gf.make_field(2, 4)
    img = [gf.embed(F4, x, F16) for x in range(4)]
    assert img[0] == 0 and img[1] == 1 and len(set(img)) == 4
    for a in range(4):
        for b in range(4):
            assert gf.embed(F4, gf.mul(F4, a, b), F16) == gf.mul(F16, img[a], img[b])
            assert gf.embed(F4, gf.add(F4, a, b), F16) == gf.add(F16, img[a], img[b])


def test_embed_rejects_non_power():
    F4 = gf.make_field(2, 2)
    F8 = gf.make_field(2, 3)
    with pytest.raises(ValueError):
        gf.embed(F4, 1, F8)
    F9 = gf.make_field(3, 2)
    with pytest.raises(ValueError):
        gf.embed(F4, 1, F9)


@pytest.mark.parametrize(
    "p,n,a,b",
    [
        (2, 2, 2, 2),   # F_4 -> F_16 -> F_256
        (2, 2, 2, 3),   # F_4 -> F_16 -> F_4096
        (2, 2, 3, 2),   # F_4 -> F_64 -> F_4096
        (2, 3, 2, 2),   # F_8 -> F_64 -> F_4096
        (3, 2, 2, 2),   # F_9 -> F_81 -> F_6561
        (2, 1, 3, 4),   # prime-field source
    ],
)
def test_embedding_tower_coherence(p, n, a, b):
    base = gf.make_field(p, n)
    mid = gf.make_field(p, n * a)
    top = gf.make_field(p, n * a * b)
    for x in range(base.q):
        via = gf.embed(mid, gf.embed(base, x, mid), top)
        direct = gf.embed(base, x, top)
        assert via == direct


def test_embedding_diamond_coherence():
    # both routes F_4 -> {F_16, F_64} -> F_4096 agree with the direct map
    F4 = gf.make_field(2, 2)
    F16 = gf.make_field(2, 4)
    F64 = gf.make_field(2, 6)
    F4096 = gf.make_field(2, 12)
    for x in range(4):
        v1 = gf.embed(F16, gf.embed(F4, x, F16), F4096)
        v2 = gf.embed(F64, gf.embed(F4, x, F64), F4096)
        v3 = gf.embed(F4, x, F4096)
        assert v1 == v2 == v3


@given(st.integers(0, 8))
@settings(max_examples=20, deadline=None)
def test_embed_image_closed_under_arithmetic(x):
    F9 = gf.make_field(3, 2)
    F81 = gf.make_field(3, 4)
    img = {gf.embed(F9, v, F81) for v in range(9)}
    a = gf.embed(F9, x, F81)
    for bb in img:
        assert gf.add(F81, a, bb) in img
        assert gf.mul(F81, a, bb) in img


def test_modulus_irreducible_by_construction():
    # exhaustive check that the chosen modulus has no low-degree factor
    for p, n in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        spec = gf.make_field(p, n)
        assert gf._is_irreducible(list(spec.modulus), p)
        assert spec.modulus[-1] == 1  # monic
