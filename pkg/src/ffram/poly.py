"""Polynomials over F_q: arithmetic, enumeration, factorization and text I/O.

A :class:`Poly` stores field-element codes (see :mod:`ffram.field`) low degree
first with no trailing zeros. Canonical order everywhere is
``(degree, coefficient list low-first)``; enumeration helpers produce
polynomials of one degree in lexicographic order of their coefficient lists.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product

from .field import FieldCtx, FieldError, Fq

NEG_INF = -math.inf


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Poly:
    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def from_fq(cls, ctx: FieldCtx, coeffs) -> Poly:
        return cls(ctx, [ctx.code(a) for a in coeffs])

    @classmethod
    def const(cls, ctx: FieldCtx, code: int = 1) -> Poly:
        return cls(ctx, [code])

    @classmethod
    def x(cls, ctx: FieldCtx, power: int = 1) -> Poly:
        return cls(ctx, [0] * power + [1])

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> Poly:
        return parse_poly(ctx, text)

    # -- basic properties -------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> Fq:
        return self.ctx.elem(self.coeffs[i] if i < len(self.coeffs) else 0)

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        if self.coeffs[-1] == 1:
            return self
        inv = self.ctx.inv_t[self.coeffs[-1]]
        mul = self.ctx.mul_t[inv]
        return Poly(self.ctx, [mul[c] for c in self.coeffs])

    def sort_key(self):
        return (len(self.coeffs), self.coeffs)

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: Poly):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise FieldError("polynomials over different fields")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add_t
        return Poly(self.ctx, [add[x][b[i]] if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> Poly:
        neg = self.ctx.neg_t
        return Poly(self.ctx, [neg[c] for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.ctx)
        add, mul = self.ctx.add_t, self.ctx.mul_t
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    out[i + j] = add[out[i + j]][row[y]]
        return Poly(self.ctx, out)

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(self.ctx), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly):
        return poly_divrem(self, other)

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divrem(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return poly_divrem(self, other)[1]

    def divides(self, other: Poly) -> bool:
        return poly_divrem(other, self)[1].is_zero()

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __lt__(self, other: Poly) -> bool:
        return self.sort_key() < other.sort_key()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, q={self.ctx.q})"


@dataclass(frozen=True)
class Factorization:
    unit: Fq
    factors: tuple[tuple[Poly, int], ...]

    def expand(self, ctx: FieldCtx) -> Poly:
        out = Poly.const(ctx, ctx.code(self.unit))
        for P, e in self.factors:
            out = out * P ** e
        return out

    @property
    def omega(self) -> int:
        return sum(e for _, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.unit)
        parts = [f"({P})" + (f"^{e}" if e > 1 else "") for P, e in self.factors]
        u = "" if self.unit.coeffs[0] == 1 and not any(self.unit.coeffs[1:]) else f"{self.unit}*"
        return u + "*".join(parts)


# -- division and gcd ----------------------------------------------------------

def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ctx = a.ctx
    r = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    if len(r) <= db:
        return Poly(ctx), a
    sub, mul = ctx.sub_t, ctx.mul_t
    inv_lead = ctx.inv_t[bc[-1]]
    quo = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = mul[c][inv_lead]
        quo[i - db] = c
        row = mul[c]
        base = i - db
        for j in range(db):
            r[base + j] = sub[r[base + j]][row[bc[j]]]
        r[i] = 0
    return Poly(ctx, quo), Poly(ctx, r[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(f, 0)`` is ``monic(f)``."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


# -- enumeration ---------------------------------------------------------------

def monic_enum(ctx: FieldCtx, d: int) -> list[Poly]:
    """All q**d monic polynomials of degree d, lexicographic in low-first coefficients."""
    return [Poly(ctx, low + (1,)) for low in product(range(ctx.q), repeat=d)]


def monics_upto(ctx: FieldCtx, max_deg: int, min_deg: int = 0) -> list[Poly]:
    return [f for d in range(min_deg, max_deg + 1) for f in monic_enum(ctx, d)]


def residues(f: Poly, reduced: bool = False) -> list[Poly]:
    """Complete (or reduced) residue system mod f: all polynomials of degree < deg f.

    The single residue mod 1 is 0, which counts as reduced.
    """
    if f.is_zero():
        raise ZeroDivisionError("residues modulo zero")
    d = f.degree
    full = [Poly(f.ctx, c) for c in product(range(f.ctx.q), repeat=d)]
    if not reduced or d == 0:
        return full
    return [g for g in full if not g.is_zero() and poly_gcd(g, f).is_one()]


# -- irreducibles and factorization ------------------------------------------

def irreducibles(ctx: FieldCtx, d: int) -> list[Poly]:
    """Monic irreducibles of degree d, sieved degree by degree and cached on ctx."""
    key = ("irr", d)
    cached = ctx.cache.get(key)
    if cached is not None:
        return cached
    with ctx.lock:
        cached = ctx.cache.get(key)
        if cached is not None:
            return cached
    # smaller degrees first; computed outside the lock to allow recursion
    smaller = [P for e in range(1, d // 2 + 1) for P in irreducibles(ctx, e)]
    found = [f for f in monic_enum(ctx, d)
             if d >= 1 and not any(poly_divrem(f, P)[1].is_zero() for P in smaller)]
    with ctx.lock:
        return ctx.cache.setdefault(key, found)


def irreducible_test(f: Poly) -> bool:
    if not f.is_monic() or f.degree < 1:
        raise ValueError("irreducible_test needs a monic polynomial of degree >= 1")
    for e in range(1, f.degree // 2 + 1):
        for P in irreducibles(f.ctx, e):
            if poly_divrem(f, P)[1].is_zero():
                return False
    return True


def factorize(f: Poly) -> Factorization:
    """Trial division against the cached irreducible sieve."""
    if f.is_zero():
        raise ZeroDivisionError("cannot factor the zero polynomial")
    ctx = f.ctx
    key = ("fac", f.coeffs)
    hit = ctx.cache.get(key)
    if hit is not None:
        return hit
    unit = ctx.elem(f.lc)
    g = f.monic()
    factors = []
    e = 1
    while g.degree >= 2 * e:
        for P in irreducibles(ctx, e):
            if 2 * e > g.degree:
                break
            mult = 0
            while True:
                quo, rem = poly_divrem(g, P)
                if not rem.is_zero():
                    break
                g, mult = quo, mult + 1
            if mult:
                factors.append((P, mult))
        e += 1
    if g.degree >= 1:
        factors.append((g, 1))
    factors.sort(key=lambda pe: pe[0].sort_key())
    result = Factorization(unit, tuple(factors))
    ctx.cache[key] = result
    return result


def divisors(f: Poly) -> list[Poly]:
    """All monic divisors of a monic f, in canonical order."""
    if f.is_zero():
        raise ZeroDivisionError("divisors of zero")
    ctx = f.ctx
    key = ("div", f.coeffs)
    hit = ctx.cache.get(key)
    if hit is not None:
        return hit
    divs = [Poly.const(ctx)]
    for P, e in factorize(f).factors:
        powers = [P ** k for k in range(e + 1)]
        divs = [d * pk for d in divs for pk in powers]
    divs.sort(key=Poly.sort_key)
    ctx.cache[key] = divs
    return divs


# -- text form -----------------------------------------------------------------

def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    ctx = f.ctx
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        cs = str(c) if c < ctx.p else str(ctx.elem(c))
        if k == 0:
            terms.append(cs)
            continue
        mono = "X" if k == 1 else f"X^{k}"
        terms.append(mono if c == 1 else cs + mono)
    return "+".join(terms)


_TOKEN = re.compile(r"\[[^\]]*\]|\d+|X|\^|\+")


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Parse ``term ('+' term)*`` with ``term := coeff | coeff? 'X' ('^' uint)?``.

    Coefficients are integers below p or bracketed extension elements.
    Whitespace is ignored; repeated powers are summed.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", 0)

    coeffs: dict[int, int] = {}
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    while True:
        if i >= len(tokens):
            raise ParseError("expected a term", len(text))
        tok, tpos = tokens[i]
        code = 1
        have_coeff = False
        if tok not in ("X", "^", "+"):
            try:
                elem = ctx.parse_elem(tok)
            except FieldError as exc:
                raise ParseError(f"coefficient {tok} invalid: {exc}", tpos) from None
            code = ctx.code(elem)
            have_coeff = True
            i += 1
        power = 0
        if peek() == "X":
            i += 1
            power = 1
            if peek() == "^":
                i += 1
                if i >= len(tokens) or not tokens[i][0].isdigit():
                    raise ParseError("expected exponent after '^'",
                                     tokens[i][1] if i < len(tokens) else len(text))
                power = int(tokens[i][0])
                i += 1
        elif not have_coeff:
            raise ParseError(f"unexpected token {tok!r}", tpos)
        coeffs[power] = ctx.add_t[coeffs.get(power, 0)][code]
        if i == len(tokens):
            break
        tok, tpos = tokens[i]
        if tok != "+":
            raise ParseError(f"expected '+' but found {tok!r}", tpos)
        i += 1
    top = max(coeffs)
    return Poly(ctx, [coeffs.get(k, 0) for k in range(top + 1)])


def poly_text(ctx: FieldCtx, direction: str, payload):
    if direction == "parse":
        return parse_poly(ctx, payload)
    if direction == "format":
        return format_poly(payload)
    raise ValueError(f"unknown direction {direction!r}")
