"""Dirichlet series over F_q[X] as truncated power series in u = q^(-s).

A monic f of degree d contributes ``|f|^(-s) = u^d``, so zeta_A and D_H are
power series whose u^d coefficient sums over the monics of degree d. The
identity checks compute the left side by enumerating every monic argument
and the right side as a product of separately built series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import ArithFn
from .charsums import batch_index, batch_monics
from .field import FieldCtx
from .poly import Poly, divisors, monic_enum


@dataclass(frozen=True)
class TruncSeries:
    q: int
    N: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.N + 1:
            raise ValueError(f"series truncated at N={self.N} needs {self.N + 1} coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_terms(cls, q: int, N: int, terms: dict) -> TruncSeries:
        """Build from ``{degree: coefficient}``, dropping degrees above N."""
        c = [Fraction(0)] * (N + 1)
        for d, v in terms.items():
            if d <= N:
                c[d] += v
        return cls(q, N, tuple(c))

    def _same(self, other: TruncSeries):
        if (self.q, self.N) != (other.q, other.N):
            raise ValueError(f"series parameters differ: (q={self.q}, N={self.N}) "
                             f"vs (q={other.q}, N={other.N})")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._same(other)
        return TruncSeries(self.q, self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        self._same(other)
        out = [Fraction(0)] * (self.N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncSeries(self.q, self.N, tuple(out))

    def to_json(self) -> dict:
        return {"q": self.q, "N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


def series_arith(op: str, a: TruncSeries, b: TruncSeries) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def zeta_series(ctx: FieldCtx, N: int) -> TruncSeries:
    """zeta_A: the u^d coefficient counts the monics of degree d (by enumeration)."""
    if N < 0:
        raise ValueError("truncation degree must be >= 0")
    key = ("zeta_series", N)
    series = ctx.cache.get(key)
    if series is None:
        series = TruncSeries(ctx.q, N, tuple(len(monic_enum(ctx, d)) for d in range(N + 1)))
        ctx.cache[key] = series
    return series


def monic_values(H: ArithFn, e: int) -> list[Fraction]:
    """H evaluated on monic_enum(ctx, e), cached on the function."""
    key = ("monic_values", e)
    vals = H._cache.get(key)
    if vals is None:
        vals = [H(f) for f in monic_enum(H.ctx, e)]
        H._cache[key] = vals
    return vals


def dh_series(H: ArithFn, ctx: FieldCtx, N: int) -> TruncSeries:
    """D_H: the u^d coefficient is the sum of H over monics of degree d."""
    if H.ctx != ctx:
        raise ValueError("H is defined over a different field")
    key = ("dh_series", N)
    series = H._cache.get(key)
    if series is None:
        series = TruncSeries(ctx.q, N, tuple(sum(monic_values(H, d), Fraction(0))
                                             for d in range(N + 1)))
        H._cache[key] = series
    return series


def divisor_series(G: ArithFn, H: ArithFn, f: Poly, N: int) -> TruncSeries:
    """Finite series sum over g | f of G(g) H(f/g) u^deg g."""
    terms: dict[int, Fraction] = {}
    for g in divisors(f):
        terms[g.degree] = terms.get(g.degree, 0) + G(g) * H(f // g)
    return TruncSeries.from_terms(f.ctx.q, N, terms)


def divisor_weight_series(G: ArithFn, h: Poly, N: int) -> TruncSeries:
    """Finite series sum over g | h of G(g) u^deg g."""
    terms: dict[int, Fraction] = {}
    for g in divisors(h):
        terms[g.degree] = terms.get(g.degree, 0) + G(g)
    return TruncSeries.from_terms(h.ctx.q, N, terms)


# -- batched enumeration helpers ----------------------------------------------

def _batch_divmod(A: np.ndarray, g: Poly):
    """Divide each row of monic codes A (width e+1) by monic g.

    Returns (quotient rows of width e+1-deg g, boolean mask of exact division).
    """
    ctx = g.ctx
    d = g.degree
    A = np.array(A, dtype=np.int64, copy=True)
    width = A.shape[1]
    if d == 0:
        return A, np.ones(A.shape[0], dtype=bool)
    gc = np.asarray(g.coeffs[:d], dtype=np.int64)
    Q = np.zeros((A.shape[0], width - d), dtype=np.int64)
    for i in range(width - 1, d - 1, -1):
        lead = A[:, i]
        Q[:, i - d] = lead
        A[:, i - d:i] = ctx.np_sub[A[:, i - d:i], ctx.np_mul[lead[:, None], gc[None, :]]]
        A[:, i] = 0
    return Q, ~A[:, :d].any(axis=1)


def _monic_index(Q: np.ndarray, q: int) -> np.ndarray:
    """Position of each monic row inside monic_enum (ignores the leading 1)."""
    return batch_index(Q[:, :-1], q)


def _exact_array(values) -> np.ndarray:
    """int64 array when every value is a small integer, else an object array of Fractions."""
    vals = [Fraction(v) for v in values]
    if all(v.denominator == 1 and abs(v.numerator) < 2 ** 40 for v in vals):
        return np.array([v.numerator for v in vals], dtype=np.int64)
    return np.array(vals, dtype=object)


def _monic_value_array(H: ArithFn, e: int) -> np.ndarray:
    key = ("monic_value_array", e)
    arr = H._cache.get(key)
    if arr is None:
        arr = H._cache[key] = _exact_array(monic_values(H, e))
    return arr


def _scalar(v: Fraction):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _s_degree_sums(G: ArithFn, H: ArithFn, fixed: Poly, N: int, over: str) -> list[Fraction]:
    """sum of S over all monic arguments of each degree 0..N.

    over="h": S(h; fixed) summed over h.  over="f": S(fixed; f) summed over f.
    Each S is evaluated per argument as the sum over g | fixed with g | arg.
    """
    ctx = fixed.ctx
    q = ctx.q
    out = []
    divs = divisors(fixed)
    for e in range(N + 1):
        rows = batch_monics(ctx, e)
        parts = []
        for g in divs:
            if g.degree > e:
                continue
            quo, hit = _batch_divmod(rows, g)
            if not hit.any():
                continue
            if over == "h":
                parts.append(_exact_array([G(g) * H(fixed // g)]) * hit)
            else:
                hvals = _monic_value_array(H, e - g.degree)
                gv = _scalar(G(g))
                if hvals.dtype != object and (
                        not isinstance(gv, int)
                        or abs(gv) * int(np.abs(hvals).max(initial=0)) >= 2 ** 62):
                    hvals = hvals.astype(object)
                term = np.zeros(rows.shape[0], dtype=hvals.dtype)
                term[hit] = hvals[_monic_index(quo[hit], q)] * gv
                parts.append(term)
        # per-argument S values, then their sum over the degree
        per_arg = sum(parts) if parts else np.zeros(rows.shape[0], dtype=np.int64)
        out.append(Fraction(sum(per_arg.tolist())))
    return out


def identity1_check(G: ArithFn, H: ArithFn, f: Poly, N: int):
    """sum_h S(h; f) u^deg h  ==  zeta_A * sum over g | f of G(g) H(f/g) u^deg g."""
    lhs = TruncSeries(f.ctx.q, N, tuple(_s_degree_sums(G, H, f, N, "h")))
    rhs = zeta_series(f.ctx, N) * divisor_series(G, H, f, N)
    return lhs, rhs, lhs == rhs


def identity2_check(G: ArithFn, H: ArithFn, h: Poly, N: int):
    """sum_f S(h; f) u^deg f  ==  D_H * sum over g | h of G(g) u^deg g."""
    lhs = TruncSeries(h.ctx.q, N, tuple(_s_degree_sums(G, H, h, N, "f")))
    rhs = dh_series(H, h.ctx, N) * divisor_weight_series(G, h, N)
    return lhs, rhs, lhs == rhs


def identity1_lhs_scalar(G: ArithFn, H: ArithFn, f: Poly, N: int) -> TruncSeries:
    """Reference left side of identity 1 built from s_conv on every monic h."""
    from .charsums import s_conv
    terms = {d: sum((s_conv(G, H, h, f) for h in monic_enum(f.ctx, d)), Fraction(0))
             for d in range(N + 1)}
    return TruncSeries.from_terms(f.ctx.q, N, terms)


def identity2_lhs_scalar(G: ArithFn, H: ArithFn, h: Poly, N: int) -> TruncSeries:
    from .charsums import s_conv
    terms = {d: sum((s_conv(G, H, h, f) for f in monic_enum(h.ctx, d)), Fraction(0))
             for d in range(N + 1)}
    return TruncSeries.from_terms(h.ctx.q, N, terms)
