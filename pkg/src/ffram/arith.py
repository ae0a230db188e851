"""Arithmetical functions on monic polynomials and the divisor convolution F.

Every function takes values in ``Fraction`` (integers embedded). The
multiplicativity class attached to an :class:`ArithFn` is measured, not
declared: construction tests the multiplicative law exhaustively on monic
pairs ``(f, g)`` with ``deg f + deg g <= CHECK_DEGREE``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .field import FieldCtx
from .poly import Poly, divisors, factorize, monic_enum, poly_gcd

CHECK_DEGREE = 3

COMPLETELY = "completely_multiplicative"
MULTIPLICATIVE = "multiplicative"
NONE = "none"

KINDS = ("norm", "norm_pow", "moebius", "totient", "von_mangoldt", "liouville",
         "moebius_sq_over_totient", "moebius_over_norm", "one", "custom", "product")


class ArithError(ValueError):
    """Bad function name, non-monic argument, or custom-table miss."""


class HypothesisError(ValueError):
    """The hypotheses of a conditional identity do not hold for the given inputs."""


def _monic_arg(f: Poly) -> Poly:
    if f.is_zero():
        raise ArithError("arithmetical functions are undefined at 0")
    if not f.is_monic():
        raise ArithError(f"{f} is not monic; normalize with .monic() first")
    return f


def norm(f: Poly) -> int:
    """|f| = q**deg f."""
    return f.ctx.q ** _monic_arg(f).degree


def moebius(f: Poly) -> int:
    fac = factorize(_monic_arg(f))
    if any(e > 1 for _, e in fac.factors):
        return 0
    return (-1) ** len(fac.factors)


def totient(f: Poly) -> int:
    """Number of nonzero residues of degree < deg f coprime to f; totient(1) = 1."""
    q = f.ctx.q
    out = 1
    for P, e in factorize(_monic_arg(f)).factors:
        nP = q ** P.degree
        out *= nP ** e - nP ** (e - 1)
    return out


def von_mangoldt(f: Poly) -> int:
    """deg P when f = P^k (this is log_q |P|), else 0."""
    fac = factorize(_monic_arg(f)).factors
    return fac[0][0].degree if len(fac) == 1 else 0


def liouville_omega(f: Poly) -> tuple[int, int]:
    omega = factorize(_monic_arg(f)).omega
    return (-1) ** omega, omega


@dataclass(eq=False)
class ArithFn:
    name: str
    kind: str
    ctx: FieldCtx
    func: Callable[[Poly], Fraction] = field(repr=False)
    codomain: str = "integer"
    mult_class: str = field(init=False, default=NONE)
    _cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        self.mult_class = _measure_mult_class(self)

    def __call__(self, f: Poly) -> Fraction:
        return self.func(f)

    def times(self, other: ArithFn) -> ArithFn:
        """Pointwise product, e.g. ``J.times(mu)`` for H = J * mu."""
        if other.ctx != self.ctx:
            raise ArithError("functions over different fields")
        key = ("times", id(other))
        if key in self._cache:
            return self._cache[key][1]
        codomain = "integer" if self.codomain == other.codomain == "integer" else "rational"
        f1, f2 = self.func, other.func
        prod = ArithFn(f"{self.name}*{other.name}", "product", self.ctx,
                       lambda f: f1(f) * f2(f), codomain)
        self._cache[key] = (other, prod)  # keep other alive so its id stays unique
        return prod

    def __str__(self) -> str:
        return self.name


def _measure_mult_class(fn: ArithFn, max_deg: int = CHECK_DEGREE) -> str:
    ctx = fn.ctx
    one = Poly.const(ctx)
    try:
        if fn(one) != 1:
            return NONE
    except ArithError:
        return NONE
    by_deg = {d: monic_enum(ctx, d) for d in range(max_deg + 1)}
    complete = True
    for d1 in range(1, max_deg + 1):
        for d2 in range(d1, max_deg + 1 - d1):
            for f in by_deg[d1]:
                for g in by_deg[d2]:
                    try:
                        lhs, rhs = fn(f * g), fn(f) * fn(g)
                    except ArithError:
                        continue  # outside a custom table
                    if lhs == rhs:
                        continue
                    if poly_gcd(f, g).is_one():
                        return NONE
                    complete = False
    return COMPLETELY if complete else MULTIPLICATIVE


def _one(f: Poly) -> Fraction:
    _monic_arg(f)
    return Fraction(1)


def _frac(fn):
    return lambda f: Fraction(fn(f))


def _builtin(ctx: FieldCtx, token: str) -> ArithFn:
    if token == "norm":
        return ArithFn("norm", "norm", ctx, _frac(norm))
    m = re.fullmatch(r"norm\^(-?\d+)", token)
    if m:
        e = int(m.group(1))
        return ArithFn(token, "norm_pow", ctx, lambda f: Fraction(norm(f)) ** e,
                       "integer" if e >= 0 else "rational")
    if token == "mu":
        return ArithFn("mu", "moebius", ctx, _frac(moebius))
    if token == "phi":
        return ArithFn("phi", "totient", ctx, _frac(totient))
    if token == "lambda_vm":
        return ArithFn("lambda_vm", "von_mangoldt", ctx, _frac(von_mangoldt))
    if token == "liouville":
        return ArithFn("liouville", "liouville", ctx, lambda f: Fraction(liouville_omega(f)[0]))
    if token == "mu2/phi":
        return ArithFn("mu2/phi", "moebius_sq_over_totient", ctx,
                       lambda f: Fraction(moebius(f) ** 2, totient(f)), "rational")
    if token == "mu/norm":
        return ArithFn("mu/norm", "moebius_over_norm", ctx,
                       lambda f: Fraction(moebius(f), norm(f)), "rational")
    if token == "one":
        return ArithFn("one", "one", ctx, _one)
    raise ArithError(f"unknown arithmetical function {token!r}")


def arith_fn(ctx: FieldCtx, token: str) -> ArithFn:
    """Look up a named function by its CLI token (cached per field)."""
    key = ("fn", token)
    fn = ctx.cache.get(key)
    if fn is None:
        fn = ctx.cache.setdefault(key, _builtin(ctx, token))
    return fn


def custom_fn(ctx: FieldCtx, name: str, table: dict) -> ArithFn:
    """Function given by a finite table ``{monic Poly: value}``."""
    values = {f.coeffs: Fraction(v) for f, v in table.items()}

    def lookup(f: Poly) -> Fraction:
        try:
            return values[_monic_arg(f).coeffs]
        except KeyError:
            raise ArithError(f"custom function {name!r} has no value at {f}") from None

    codomain = "integer" if all(v.denominator == 1 for v in values.values()) else "rational"
    return ArithFn(name, "custom", ctx, lookup, codomain)


def apply(fn: ArithFn, f: Poly) -> Fraction:
    return fn(f)


def convolve_F(G: ArithFn, H: ArithFn, f: Poly) -> Fraction:
    """F(f) = sum over monic g | f of G(g) H(f/g)."""
    _monic_arg(f)
    return sum((G(g) * H(f // g) for g in divisors(f)), Fraction(0))


def require_holder_hypotheses(G: ArithFn, J: ArithFn, f: Poly) -> None:
    """Check the conditions under which S can be evaluated through F.

    G completely multiplicative, J multiplicative, and for every monic
    irreducible P | f: G(P) != 0 and G(P) != J(P).
    """
    if G.mult_class != COMPLETELY:
        raise HypothesisError(f"G = {G} is not completely multiplicative")
    if J.mult_class == NONE:
        raise HypothesisError(f"J = {J} is not multiplicative")
    for P, _ in factorize(f).factors:
        gP = G(P)
        if gP == 0:
            raise HypothesisError(f"G({P}) = 0")
        if gP == J(P):
            raise HypothesisError(f"G({P}) = J({P}) = {gP}")
