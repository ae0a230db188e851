"""Exact arithmetic in Q(zeta_p).

Values are coordinate vectors over the power basis ``1, zeta, ..., zeta^(p-2)``;
``zeta^(p-1)`` is rewritten as ``-(1 + zeta + ... + zeta^(p-2))``. The basis
representation is unique, so equality is plain coordinate equality.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .field import FieldError, is_prime


def _normalize(p: int, ring) -> tuple[Fraction, ...]:
    # ring: length-p coefficients over zeta^0..zeta^(p-1)
    top = ring[p - 1]
    return tuple(Fraction(c - top) for c in ring[:p - 1])


@dataclass(frozen=True)
class CycQ:
    p: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.p - 1:
            raise ValueError(f"Q(zeta_{self.p}) needs {self.p - 1} coordinates")

    @classmethod
    def rational(cls, p: int, value) -> CycQ:
        return cls(p, (Fraction(value),) + (Fraction(0),) * (p - 2))

    @classmethod
    def from_counts(cls, p: int, counts) -> CycQ:
        """``sum(counts[k] * zeta**k)`` for exponent weights ``counts[0..p-1]``."""
        return cls(p, _normalize(p, list(counts)))

    def _ring(self) -> list[Fraction]:
        return list(self.coords) + [Fraction(0)]

    def _coerce(self, other) -> CycQ:
        if isinstance(other, CycQ):
            if other.p != self.p:
                raise ValueError(f"mixing Q(zeta_{self.p}) and Q(zeta_{other.p})")
            return other
        if isinstance(other, Rational):
            return CycQ.rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycQ(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycQ(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, CycQ):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        ring = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        ring[(i + j) % p] += a * b
        return CycQ(p, _normalize(p, ring))

    __rmul__ = __mul__

    def scale(self, r) -> CycQ:
        r = Fraction(r)
        return CycQ(self.p, tuple(a * r for a in self.coords))

    def __truediv__(self, r) -> CycQ:
        r = Fraction(r)
        if r == 0:
            raise ZeroDivisionError("division of a cyclotomic value by zero")
        return self.scale(1 / r)

    def __eq__(self, other):
        if isinstance(other, CycQ):
            return self.p == other.p and self.coords == other.coords
        if isinstance(other, Rational):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.p, self.coords))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def approx(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum((float(c) * z ** k for k, c in enumerate(self.coords)), 0j)

    def to_json(self):
        if self.is_rational():
            return str(self.coords[0])
        return {"p": self.p, "coords": [str(c) for c in self.coords]}

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coords[0])
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if k == 0 else f"({c})*z^{k}")
        return " + ".join(terms)


def cyc_root(p: int, k: int) -> CycQ:
    """Exact zeta_p**k."""
    if not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    ring = [0] * p
    ring[k % p] = 1
    return CycQ(p, _normalize(p, ring))


def cyc_arith(op: str, a: CycQ, b) -> CycQ:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    if op == "scalar_div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def cyc_approx(a: CycQ) -> tuple[float, float]:
    z = a.approx()
    return (z.real, z.imag)
