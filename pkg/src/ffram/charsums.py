"""The additive character eps, polynomial Ramanujan sums and their Fourier theory.

For monic f of degree r, write ``h mod f = a_1 X^(r-1) + ... + a_r``. Then
``eps(h, f) = zeta_p ** top(a_1)`` where ``top`` picks the theta^(t-1)
coordinate of a_1 (the element itself over a prime field). All character
sums are returned exactly as :class:`~ffram.cyclotomic.CycQ`.

The ``batch_*`` helpers evaluate the same quantities over whole residue
systems with numpy; they rely only on linearity of reduction mod f and are
cross-checked against the scalar functions in the test-suite.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .arith import (ArithError, ArithFn, COMPLETELY, HypothesisError, arith_fn,
                    convolve_F, factorize, moebius, norm, require_holder_hypotheses,
                    totient, von_mangoldt, liouville_omega)
from .cyclotomic import CycQ
from .field import FieldCtx
from .poly import Poly, divisors, poly_divrem, poly_gcd, residues

EXAMPLE_KINDS = ("mu", "phi", "mu_over_norm", "mu2_over_phi", "vm", "liouville")

# H token for each worked example (G is always the norm)
EXAMPLE_H = {
    "mu": "mu",
    "phi": "phi",
    "mu_over_norm": "mu/norm",
    "mu2_over_phi": "mu2/phi",
    "vm": "lambda_vm",
    "liouville": "liouville",
}


def _modulus(f: Poly) -> Poly:
    if f.is_zero():
        raise ZeroDivisionError("zero modulus")
    if not f.is_monic():
        raise ArithError(f"modulus {f} must be monic")
    return f


def _monic(h: Poly) -> Poly:
    if h.is_zero() or not h.is_monic():
        raise ArithError(f"{h} must be a nonzero monic polynomial")
    return h


# -- eps -----------------------------------------------------------------------

def eps_exponent(h: Poly, f: Poly) -> int:
    """Exponent k in Z/p with eps(h, f) = zeta_p**k."""
    r = _modulus(f).degree
    if r == 0:
        return 0
    rem = poly_divrem(h, f)[1].coeffs
    a1 = rem[r - 1] if len(rem) == r else 0
    return int(f.ctx.np_top[a1])


def eps(h: Poly, f: Poly) -> CycQ:
    p = f.ctx.p
    counts = [0] * p
    counts[eps_exponent(h, f)] = 1
    return CycQ.from_counts(p, counts)


def _weighted_sum(h: Poly, f: Poly, weighted) -> CycQ:
    """sum of w * eps(h g, f) over (g, w) pairs."""
    p = f.ctx.p
    ring = [Fraction(0)] * p
    for g, w in weighted:
        ring[eps_exponent(h * g, f)] += w
    return CycQ.from_counts(p, ring)


def char_sum_full(h: Poly, f: Poly) -> CycQ:
    """sum of eps(h g, f) over the complete residue system mod f."""
    return _weighted_sum(h, f, ((g, 1) for g in residues(_modulus(f))))


def eta_direct(h: Poly, f: Poly) -> CycQ:
    """Ramanujan sum as a character sum over the reduced residues mod f."""
    _monic(h)
    return _weighted_sum(h, f, ((g, 1) for g in residues(_modulus(f), reduced=True)))


def eta_formula(h: Poly, f: Poly) -> Fraction:
    """sum over d | (h, f) of |d| mu(f/d)."""
    _monic(h)
    _modulus(f)
    return Fraction(sum(norm(d) * moebius(f // d) for d in divisors(poly_gcd(h, f))))


# -- S(h; f) and its Fourier expansion ----------------------------------------

def s_from_gcd(G: ArithFn, H: ArithFn, r: Poly, f: Poly) -> Fraction:
    """S given r = (h, f) already computed."""
    return sum((G(g) * H(f // g) for g in divisors(r)), Fraction(0))


def s_conv(G: ArithFn, H: ArithFn, h: Poly, f: Poly) -> Fraction:
    """S(h; f) = sum over g | (h, f) of G(g) H(f/g)."""
    _monic(h)
    return s_from_gcd(G, H, poly_gcd(h, _modulus(f)), f)


def fourier_coeff(G: ArithFn, H: ArithFn, f: Poly, g: Poly) -> Fraction:
    """a_f(g) = |f|^-1 * sum over d | (f, g) of |d| H(d) G(f/d); g = 0 allowed."""
    r = poly_gcd(_modulus(f), g)
    total = sum((norm(d) * H(d) * G(f // d) for d in divisors(r)), Fraction(0))
    return total / norm(f)


def fourier_coeff_refined(G: ArithFn, H: ArithFn, f: Poly, g: Poly) -> Fraction:
    """Coefficient via G(f/r) * sum over d | r of |d| H(d) G(r/d), r = (g, f).

    Valid only for completely multiplicative G.
    """
    if G.mult_class != COMPLETELY:
        raise HypothesisError(f"G = {G} is not completely multiplicative")
    r = poly_gcd(_modulus(f), g)
    inner = sum((norm(d) * H(d) * G(r // d) for d in divisors(r)), Fraction(0))
    return G(f // r) * inner / norm(f)


def fourier_reconstruct(G: ArithFn, H: ArithFn, h: Poly, f: Poly) -> CycQ:
    """sum over the complete residue system of a_f(g) eps(h g, f)."""
    _monic(h)
    return _weighted_sum(h, f, ((g, fourier_coeff(G, H, f, g)) for g in residues(_modulus(f))))


def holder_eval(G: ArithFn, J: ArithFn, h: Poly, f: Poly) -> Fraction:
    """S(h; f) for H = J*mu computed as J(k) mu(k) F(f) / F(k), k = f/(h, f).

    Raises HypothesisError when G, J do not satisfy the required conditions.
    """
    _monic(h)
    _modulus(f)
    require_holder_hypotheses(G, J, f)
    H = J.times(arith_fn(f.ctx, "mu"))
    k = f // poly_gcd(h, f)
    Fk = convolve_F(G, H, k)
    if Fk == 0:
        raise HypothesisError(f"F({k}) vanishes")
    return J(k) * moebius(k) * convolve_F(G, H, f) / Fk


# -- the six worked examples with G = |.| --------------------------------------

def _is_square(r: Poly) -> bool:
    return all(e % 2 == 0 for _, e in factorize(r).factors)


def example_coeff(kind: str, f: Poly, g: Poly) -> Fraction:
    """Closed form of a_f(g) for G = |.| and the named H, in terms of r = (f, g)."""
    r = poly_gcd(_modulus(f), g)
    if kind == "mu":
        return Fraction(int(r.is_one()))
    if kind == "phi":
        return Fraction(norm(r))
    if kind == "mu_over_norm":
        return Fraction(totient(r), norm(r))
    if kind == "mu2_over_phi":
        return Fraction(norm(r), totient(r))
    if kind == "vm":
        return Fraction(r.degree)
    if kind == "liouville":
        return Fraction(int(_is_square(r)))
    raise ValueError(f"unknown example kind {kind!r}")


def example_weight(kind: str, f: Poly, g: Poly) -> Fraction:
    """Weight of eps(h g, f) on the character-sum side of a worked example.

    Matches the displayed form: a restricted sum for mu and liouville, the
    extra factor |f| for mu_over_norm, the closed-form coefficient otherwise.
    """
    if kind == "mu":
        return Fraction(int(poly_gcd(f, g).is_one()))
    if kind == "liouville":
        return Fraction(int(_is_square(poly_gcd(f, g))))
    if kind == "mu_over_norm":
        return norm(f) * example_coeff(kind, f, g)
    return example_coeff(kind, f, g)


def example_rhs(kind: str, h: Poly, f: Poly) -> Fraction:
    """Divisor-sum side of a worked example, with its literal scaling."""
    rhs = Fraction(0)
    for g in divisors(poly_gcd(h, f)):
        k = f // g
        if kind == "mu":
            rhs += norm(g) * moebius(k)
        elif kind == "phi":
            rhs += norm(g) * totient(k)
        elif kind == "mu_over_norm":
            rhs += norm(g) ** 2 * moebius(k)
        elif kind == "mu2_over_phi":
            rhs += Fraction(norm(g) * moebius(k) ** 2, totient(k))
        elif kind == "vm":
            rhs += norm(g) * von_mangoldt(k)
        elif kind == "liouville":
            rhs += norm(g) * liouville_omega(k)[0]
        else:
            raise ValueError(f"unknown example kind {kind!r}")
    return rhs


def example_identity(kind: str, h: Poly, f: Poly) -> tuple[CycQ, Fraction]:
    """Both sides of a worked-example expansion."""
    _monic(h)
    _modulus(f)
    lhs = _weighted_sum(h, f, ((g, example_weight(kind, f, g)) for g in residues(f)))
    return lhs, example_rhs(kind, h, f)


# -- vectorized evaluation over residue systems --------------------------------

def batch_residues(ctx: FieldCtx, d: int) -> np.ndarray:
    """All polynomials of degree < d as a (q**d, d) code array, ordered like residues()."""
    idx = np.arange(ctx.q ** d, dtype=np.int64)
    cols = [(idx // ctx.q ** (d - 1 - i)) % ctx.q for i in range(d)]
    return np.stack(cols, axis=1) if d else np.zeros((1, 0), dtype=np.int64)


def batch_monics(ctx: FieldCtx, e: int) -> np.ndarray:
    """All monic polynomials of degree e as a (q**e, e+1) code array, ordered like monic_enum()."""
    low = batch_residues(ctx, e)
    return np.concatenate([low, np.ones((low.shape[0], 1), dtype=np.int64)], axis=1)


def batch_reduce(A: np.ndarray, f: Poly) -> np.ndarray:
    """Reduce each row (low-first codes) modulo monic f; returns width deg f."""
    ctx = f.ctx
    d = f.degree
    A = np.array(A, dtype=np.int64, copy=True)
    if A.shape[1] < d:
        A = np.pad(A, ((0, 0), (0, d - A.shape[1])))
    fc = np.asarray(f.coeffs[:d], dtype=np.int64)
    for i in range(A.shape[1] - 1, d - 1, -1):
        lead = A[:, i]
        A[:, i - d:i] = ctx.np_sub[A[:, i - d:i], ctx.np_mul[lead[:, None], fc[None, :]]]
        A[:, i] = 0
    return A[:, :d]


def batch_index(R: np.ndarray, q: int) -> np.ndarray:
    """Position of each reduced row inside batch_residues()."""
    d = R.shape[1]
    weights = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return R @ weights if d else np.zeros(R.shape[0], dtype=np.int64)


def batch_eps_exponents(f: Poly, Hs: np.ndarray, Gs: np.ndarray) -> np.ndarray:
    """Exponents of eps(h g, f) for every row h of Hs and g of Gs (both reduced mod f).

    Uses that the X^(d-1) coefficient of (h g mod f) equals
    sum_j g_j * c_j(h) with c_j(h) the X^(d-1) coefficient of (h X^j mod f).
    """
    ctx = f.ctx
    d = f.degree
    if d == 0:
        return np.zeros((Hs.shape[0], Gs.shape[0]), dtype=np.int64)
    fc = np.asarray(f.coeffs[:d], dtype=np.int64)
    v = np.array(Hs, dtype=np.int64, copy=True)
    C = np.empty((v.shape[0], d), dtype=np.int64)
    C[:, 0] = v[:, d - 1]
    for j in range(1, d):
        top = v[:, d - 1]
        shifted = np.zeros_like(v)
        shifted[:, 1:] = v[:, :-1]
        v = ctx.np_sub[shifted, ctx.np_mul[top[:, None], fc[None, :]]]
        C[:, j] = v[:, d - 1]
    if ctx.t == 1:
        return (C @ np.asarray(Gs, dtype=np.int64).T) % ctx.p
    acc = np.zeros((C.shape[0], Gs.shape[0]), dtype=np.int64)
    for j in range(d):
        acc = ctx.np_add[acc, ctx.np_mul[C[:, j][:, None], Gs[:, j][None, :]]]
    return ctx.np_top[acc]


def exponent_histogram(E: np.ndarray, p: int, weights=None) -> np.ndarray:
    """Row-wise sums of weights grouped by exponent value: shape (rows, p)."""
    if weights is None:
        return np.stack([(E == k).sum(axis=1) for k in range(p)], axis=1)
    w = np.asarray(weights, dtype=object)
    return np.stack([((E == k) * w).sum(axis=1) for k in range(p)], axis=1)


def to_poly(ctx: FieldCtx, row) -> Poly:
    return Poly(ctx, [int(c) for c in row])
