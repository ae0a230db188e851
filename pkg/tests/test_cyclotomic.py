import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffram.cyclotomic import CycQ, cyc_approx, cyc_arith, cyc_root
from ffram.field import FieldError

PRIMES = [2, 3, 5, 7]


def test_root_examples():
    assert cyc_root(2, 1) == -1
    assert cyc_root(5, 0) == 1 and cyc_root(5, 10) == 1
    assert cyc_root(3, 2).coords == (-1, -1)
    with pytest.raises(FieldError):
        cyc_root(4, 1)


def test_arith_examples():
    z2 = cyc_root(2, 1)
    assert cyc_arith("add", z2, z2) == -2
    assert cyc_arith("add", cyc_root(3, 1), cyc_root(3, 2)) == -1
    assert cyc_arith("scalar_div", CycQ.rational(3, 6), 2) == 3
    assert cyc_arith("scalar_mul", cyc_root(3, 1), Fraction(1, 2)).coords == (0, Fraction(1, 2))
    assert cyc_arith("sub", cyc_root(5, 1), cyc_root(5, 1)) == 0
    with pytest.raises(ZeroDivisionError):
        cyc_arith("scalar_div", cyc_root(3, 1), 0)
    with pytest.raises(ValueError):
        cyc_root(3, 1) + cyc_root(5, 1)


def test_approx_examples():
    assert cyc_approx(CycQ.rational(5, 1)) == pytest.approx((1.0, 0.0))
    assert cyc_approx(cyc_root(2, 1)) == pytest.approx((-1.0, 0.0))
    assert cyc_approx(cyc_root(3, 1)) == pytest.approx((-0.5, 3 ** 0.5 / 2))


@pytest.mark.parametrize("p", PRIMES)
def test_root_sum_vanishes(p):
    total = CycQ.rational(p, 0)
    for k in range(p):
        total = total + cyc_root(p, k)
    assert total == 0 and total.is_rational()


@given(st.sampled_from(PRIMES), st.integers(-20, 20), st.integers(-20, 20))
def test_root_exponent_law(p, a, b):
    assert cyc_root(p, a) * cyc_root(p, b) == cyc_root(p, a + b)


def _cyc(p):
    q = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))
    return st.lists(q, min_size=p - 1, max_size=p - 1).map(lambda c: CycQ(p, tuple(c)))


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(_cyc(p), _cyc(p), _cyc(p))))
def test_ring_axioms_and_embedding(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    z = a.approx() * b.approx()
    assert cmath.isclose((a * b).approx(), z, rel_tol=1e-9, abs_tol=1e-6)


def test_json_forms():
    assert CycQ.rational(3, Fraction(-1, 2)).to_json() == "-1/2"
    assert cyc_root(3, 1).to_json() == {"p": 3, "coords": ["0", "1"]}


def test_from_counts_matches_sum_of_roots():
    counts = [3, 0, 2, 1, 5]
    expect = sum((cyc_root(5, k) * c for k, c in enumerate(counts)), CycQ.rational(5, 0))
    assert CycQ.from_counts(5, counts) == expect
    assert CycQ.from_counts(5, [1] * 5) == 0
