from fractions import Fraction
from itertools import product

import pytest

from conftest import P
from ffram.arith import (COMPLETELY, MULTIPLICATIVE, NONE, ArithError, HypothesisError, apply,
                         arith_fn, convolve_F, custom_fn, liouville_omega, moebius, norm,
                         require_holder_hypotheses, totient, von_mangoldt)
from ffram.field import field_make
from ffram.poly import divisors, factorize, monics_upto, poly_gcd, residues


def test_norm(F2, F3):
    assert norm(P(F2, "X^2+X")) == 4
    assert norm(P(F3, "X")) == 3
    assert norm(P(F3, "1")) == 1
    with pytest.raises(ArithError):
        norm(P(F3, "0"))
    with pytest.raises(ArithError):
        norm(P(F3, "2X"))


def test_moebius(F2):
    assert moebius(P(F2, "X")) == -1
    assert moebius(P(F2, "X^2")) == 0
    assert moebius(P(F2, "X^2+X")) == 1
    assert moebius(P(F2, "1")) == 1


def test_totient(F2):
    assert totient(P(F2, "X")) == 1
    assert totient(P(F2, "X^2")) == 2
    assert totient(P(F2, "1")) == 1


def test_von_mangoldt(F2):
    assert von_mangoldt(P(F2, "X^2")) == 1
    assert von_mangoldt(P(F2, "X^2+X")) == 0
    Q = P(F2, "X^2+X+1")
    assert von_mangoldt(Q ** 3) == 2
    assert von_mangoldt(P(F2, "1")) == 0


def test_liouville(F2):
    assert liouville_omega(P(F2, "X^3")) == (-1, 3)
    assert liouville_omega(P(F2, "X^2+X")) == (1, 2)
    assert liouville_omega(P(F2, "1")) == (1, 0)


def test_apply_examples(F2, F3):
    assert apply(arith_fn(F2, "mu/norm"), P(F2, "X")) == Fraction(-1, 2)
    assert apply(arith_fn(F2, "mu2/phi"), P(F2, "X^2")) == 0
    assert apply(arith_fn(F3, "norm^2"), P(F3, "X")) == 9
    assert apply(arith_fn(F3, "norm^-1"), P(F3, "X")) == Fraction(1, 3)
    assert apply(arith_fn(F3, "one"), P(F3, "X^2")) == 1


def test_unknown_token(F2):
    with pytest.raises(ArithError):
        arith_fn(F2, "sigma")


def test_custom_table(F2):
    fn = custom_fn(F2, "t", {P(F2, "1"): 1, P(F2, "X"): 5})
    assert fn(P(F2, "X")) == 5
    with pytest.raises(ArithError):
        fn(P(F2, "X+1"))


@pytest.mark.parametrize("pt", [(2, 1), (3, 1), (2, 2)])
def test_measured_classes(pt):
    ctx = field_make(*pt)
    expect = {"norm": COMPLETELY, "norm^2": COMPLETELY, "one": COMPLETELY,
              "liouville": COMPLETELY, "mu": MULTIPLICATIVE, "phi": MULTIPLICATIVE,
              "mu2/phi": MULTIPLICATIVE, "mu/norm": MULTIPLICATIVE, "lambda_vm": NONE}
    for tok, cls in expect.items():
        assert arith_fn(ctx, tok).mult_class == cls, tok


def test_value_at_one(F3):
    one = P(F3, "1")
    for tok in ["norm", "norm^3", "mu", "phi", "liouville", "mu2/phi", "mu/norm", "one"]:
        assert arith_fn(F3, tok)(one) == 1
    assert arith_fn(F3, "lambda_vm")(one) == 0


def test_custom_class_is_measured(F2):
    fs = monics_upto(F2, 3)
    assert custom_fn(F2, "mu_t", {f: moebius(f) for f in fs}).mult_class == MULTIPLICATIVE
    assert custom_fn(F2, "n_t", {f: norm(f) for f in fs}).mult_class == COMPLETELY
    table = {f: 1 for f in fs}
    table[P(F2, "X^2")] = 7  # X^2 * (X+1) is a coprime product, so the law breaks
    assert custom_fn(F2, "bad", table).mult_class == NONE


def test_convolve_examples(F2):
    norm_, mu = arith_fn(F2, "norm"), arith_fn(F2, "mu")
    assert convolve_F(norm_, mu, P(F2, "X")) == 1
    assert convolve_F(norm_, mu, P(F2, "X^2+X")) == 1
    assert convolve_F(mu, norm_, P(F2, "1")) == 1


@pytest.mark.parametrize("pt", [(2, 1), (3, 1)])
def test_classical_divisor_sums(pt):
    ctx = field_make(*pt)
    for h in monics_upto(ctx, 4 if ctx.q == 2 else 3):
        divs = divisors(h)
        assert sum(totient(d) for d in divs) == norm(h)
        assert sum(moebius(d) for d in divs) == (1 if h.is_one() else 0)
        # direct count of coprime nonzero residues
        assert totient(h) == sum(1 for g in residues(h)
                                 if not g.is_zero() and poly_gcd(g, h).is_one()) + h.is_one()


@pytest.mark.parametrize("pt", [(2, 1), (3, 1)])
@pytest.mark.parametrize("G_tok", ["norm", "norm^2"])
def test_euler_product(pt, G_tok):
    ctx = field_make(*pt)
    G, J = arith_fn(ctx, G_tok), arith_fn(ctx, "one")
    for h in monics_upto(ctx, 4 if ctx.q == 2 else 3):
        lhs = sum((moebius(g) * J(g) / G(g) for g in divisors(h)), Fraction(0))
        rhs = Fraction(1)
        for Q, _ in factorize(h).factors:
            rhs *= 1 - J(Q) / G(Q)
        assert lhs == rhs


def test_holder_hypotheses(F2):
    norm_, one, mu = (arith_fn(F2, t) for t in ("norm", "one", "mu"))
    require_holder_hypotheses(norm_, one, P(F2, "X^2+X"))
    with pytest.raises(HypothesisError):
        require_holder_hypotheses(norm_, norm_, P(F2, "X"))
    with pytest.raises(HypothesisError):
        require_holder_hypotheses(mu, one, P(F2, "X"))


def test_pointwise_product(F3):
    one, mu = arith_fn(F3, "one"), arith_fn(F3, "mu")
    H = one.times(mu)
    assert H is one.times(mu)
    for f in monics_upto(F3, 2):
        assert H(f) == mu(f)
    assert H.mult_class == MULTIPLICATIVE


def test_pairs_exhaustive_completely_multiplicative(F2):
    n = arith_fn(F2, "norm^-1")
    fs = monics_upto(F2, 2)
    for f, g in product(fs, repeat=2):
        assert n(f * g) == n(f) * n(g)
