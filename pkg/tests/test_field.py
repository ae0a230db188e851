from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_Q
from ffram.field import FieldError, Fq, field_make, fp_is_irreducible, irreducible_psis


def test_prime_field_context():
    ctx = field_make(2)
    assert (ctx.p, ctx.t, ctx.q, ctx.psi) == (2, 1, 2, None)


def test_default_psi_f4():
    assert field_make(2, 2).psi == (1, 1, 1)  # X^2+X+1, low first


def test_default_psi_is_smallest_and_deterministic():
    for p, t in [(2, 3), (3, 2), (5, 2), (2, 4)]:
        psis = irreducible_psis(p, t)
        assert field_make(p, t).psi == psis[0] == field_make(p, t).psi
        assert psis == sorted(psis)


@pytest.mark.parametrize("p,t,psi", [(2, 2, (0, 0, 1)), (2, 2, (1, 0, 1)), (3, 2, (1, 1, 2)),
                                     (4, 1, None), (2, 0, None), (2, 1, (0, 1))])
def test_bad_parameters(p, t, psi):
    with pytest.raises(FieldError):
        field_make(p, t, psi)


def _brute_irreducible(poly, p):
    # any root or quadratic factor, enough for degree <= 3
    d = len(poly) - 1
    for a in range(p):
        if sum(c * a ** i for i, c in enumerate(poly)) % p == 0:
            return False
    return d <= 3


def test_irreducible_psis_against_root_test():
    for p in (2, 3, 5):
        for t in (2, 3):
            expect = [tuple(c) + (1,) for c in product(range(p), repeat=t)
                      if _brute_irreducible(tuple(c) + (1,), p)]
            assert sorted(irreducible_psis(p, t)) == sorted(expect)
            assert all(fp_is_irreducible(ps, p) for ps in expect)


def test_arith_examples():
    F4 = field_make(2, 2)
    theta = F4.parse_elem("[1,0]")
    assert F4.mul(theta, theta) == F4.parse_elem("[1,1]")
    assert F4.inv(theta) == F4.parse_elem("[1,1]")
    F5 = field_make(5)
    assert F5.add(F5.elem(3), F5.elem(4)) == F5.elem(2)
    assert F5.inv(F5.elem(2)) == F5.elem(3)
    F2 = field_make(2)
    assert F2.inv(F2.one) == F2.one


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_make(3).inv(field_make(3).zero)


def test_top_basis_coeff_examples():
    F4 = field_make(2, 2)
    assert F4.top_basis_coeff(F4.parse_elem("[1,1]")) == 1
    assert F4.top_basis_coeff(F4.one) == 0
    F3 = field_make(3)
    assert F3.top_basis_coeff(F3.elem(2)) == 2


def test_elem_text_roundtrip():
    ctx = field_make(3, 2)
    for a in ctx.elements():
        assert ctx.parse_elem(str(a)) == a
        assert len(a.coeffs) == 2
    assert str(field_make(5).elem(4)) == "4"


@pytest.mark.parametrize("p,t", SMALL_Q + [(3, 2)])
def test_field_axioms_exhaustive(p, t):
    ctx = field_make(p, t)
    E = ctx.elements()
    zero, one = ctx.zero, ctx.one
    for a in E:
        assert ctx.add(a, zero) == a and ctx.mul(a, one) == a
        if a != zero:
            invs = [b for b in E if ctx.mul(a, b) == one]
            assert invs == [ctx.inv(a)]
        for b in E:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.top_basis_coeff(ctx.add(a, b)) == (
                ctx.top_basis_coeff(a) + ctx.top_basis_coeff(b)) % p
            for c in E:
                assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
                assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
                assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


def _polymulmod(a, b, psi, p):
    # schoolbook product reduced by the monic psi; independent of the tables
    t = len(psi) - 1
    out = [0] * (2 * t)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    for k in range(2 * t - 1, t - 1, -1):
        c = out[k]
        if c:
            for i in range(t + 1):
                out[k - t + i] = (out[k - t + i] - c * psi[i]) % p
    return tuple(out[:t])


@given(st.sampled_from([(2, 3), (3, 2), (2, 4), (5, 2)]), st.data())
def test_mul_matches_schoolbook(pt, data):
    p, t = pt
    ctx = field_make(p, t)
    a = data.draw(st.tuples(*[st.integers(0, p - 1)] * t))
    b = data.draw(st.tuples(*[st.integers(0, p - 1)] * t))
    assert ctx.mul(Fq(a), Fq(b)).coeffs == _polymulmod(a, b, ctx.psi, p)


def test_alternative_psi_accepted():
    ctx = field_make(2, 3, (1, 1, 0, 1))
    assert ctx.psi == (1, 1, 0, 1) and ctx.q == 8
