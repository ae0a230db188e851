"""Arithmetic in F_p and in the extension F_{p^t} = F_p[theta]/(Psi).

Field elements are handled internally as integer *codes*: the element
``a_0 + a_1 theta + ... + a_{t-1} theta^{t-1}`` has code ``sum(a_i * p**i)``.
Every :class:`FieldCtx` precomputes addition, multiplication and inverse
tables over those codes so that polynomial code upstream can stay cheap.
:class:`Fq` is the public value type wrapping a coefficient tuple.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product

import numpy as np

MAX_ORDER = 4096


class FieldError(ValueError):
    """Invalid field parameters or malformed field elements."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# -- small helpers on F_p polynomials given as low-first int lists -------------

def _strip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    a = _strip(a)
    b = _strip(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _strip(a)
    return a


def fp_is_irreducible(poly, p: int) -> bool:
    """Trial division of a monic F_p polynomial by every monic of degree <= deg/2."""
    poly = _strip(poly)
    n = len(poly) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _fp_mod(poly, list(low) + [1], p):
                return False
    return True


def default_psi(p: int, t: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree t over F_p.

    Coefficient lists are compared low-degree-first.
    """
    for low in product(range(p), repeat=t):
        cand = list(low) + [1]
        if fp_is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {t} over F_{p}")  # unreachable for t >= 1


def irreducible_psis(p: int, t: int) -> list[tuple[int, ...]]:
    """All monic irreducibles of degree t over F_p, in the default-search order."""
    return [tuple(low) + (1,) for low in product(range(p), repeat=t)
            if fp_is_irreducible(list(low) + [1], p)]


@dataclass(frozen=True)
class Fq:
    """Element of F_q: ``coeffs[i]`` is the coefficient of theta**i."""

    coeffs: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        if len(self.coeffs) == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in reversed(self.coeffs)) + "]"


@dataclass(frozen=True)
class FieldCtx:
    p: int
    t: int
    psi: tuple[int, ...] | None
    q: int = field(init=False)

    # lookup tables over codes, filled in __post_init__
    add_t: list = field(init=False, repr=False, compare=False)
    sub_t: list = field(init=False, repr=False, compare=False)
    mul_t: list = field(init=False, repr=False, compare=False)
    neg_t: list = field(init=False, repr=False, compare=False)
    inv_t: list = field(init=False, repr=False, compare=False)
    np_add: np.ndarray = field(init=False, repr=False, compare=False)
    np_sub: np.ndarray = field(init=False, repr=False, compare=False)
    np_mul: np.ndarray = field(init=False, repr=False, compare=False)
    np_top: np.ndarray = field(init=False, repr=False, compare=False)
    cache: dict = field(init=False, repr=False, compare=False)
    lock: threading.Lock = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise FieldError(f"p = {self.p} is not prime")
        if not isinstance(self.t, int) or self.t < 1:
            raise FieldError(f"t = {self.t} must be a positive integer")
        q = self.p ** self.t
        if q > MAX_ORDER:
            raise FieldError(f"q = {q} exceeds supported field size {MAX_ORDER}")
        if self.t == 1:
            if self.psi is not None:
                raise FieldError("psi may only be given when t > 1")
        else:
            psi = default_psi(self.p, self.t) if self.psi is None else tuple(int(c) for c in self.psi)
            if len(psi) != self.t + 1 or any(not 0 <= c < self.p for c in psi):
                raise FieldError(f"psi must be {self.t + 1} coefficients in [0, {self.p})")
            if psi[-1] != 1:
                raise FieldError("psi must be monic")
            if not fp_is_irreducible(list(psi), self.p):
                raise FieldError("psi is reducible over F_p")
            object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "q", q)
        self._build_tables()
        object.__setattr__(self, "cache", {})
        object.__setattr__(self, "lock", threading.Lock())

    def _build_tables(self):
        p, t, q = self.p, self.t, self.q
        codes = np.arange(q)
        digits = np.stack([(codes // p ** i) % p for i in range(t)], axis=1)
        weights = p ** np.arange(t)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        # discrete log tables from a primitive element
        powers = self._primitive_powers()
        log = np.zeros(q, dtype=np.int64)
        log[powers] = np.arange(q - 1)
        antilog = np.asarray(powers, dtype=np.int64)
        mul = antilog[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = [0] + antilog[(-log[1:]) % (q - 1)].tolist()
        top = codes // p ** (t - 1)
        setter = object.__setattr__
        setter(self, "np_add", add.astype(np.int64))
        setter(self, "np_sub", sub.astype(np.int64))
        setter(self, "np_mul", mul)
        setter(self, "np_top", top.astype(np.int64))
        setter(self, "add_t", add.tolist())
        setter(self, "sub_t", sub.tolist())
        setter(self, "mul_t", mul.tolist())
        setter(self, "neg_t", sub[0].tolist())
        setter(self, "inv_t", inv)

    def _primitive_powers(self) -> list[int]:
        if self.q == 2:
            return [1]
        for g in range(2, self.q):
            powers, x = [1], g
            while x != 1:
                powers.append(x)
                x = self._raw_mul(x, g)
            if len(powers) == self.q - 1:
                return powers
        raise FieldError("no primitive element found")  # impossible in a field

    def _raw_mul(self, a: int, b: int) -> int:
        p, t = self.p, self.t
        if t == 1:
            return a * b % p
        da = [(a // p ** i) % p for i in range(t)]
        db = [(b // p ** i) % p for i in range(t)]
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        r = _fp_mod([c % p for c in prod], list(self.psi), p) if any(prod) else []
        r = r + [0] * (t - len(r))
        return sum(c * p ** i for i, c in enumerate(r))

    # -- codes <-> Fq ----------------------------------------------------------

    def elem(self, code: int) -> Fq:
        return Fq(tuple((code // self.p ** i) % self.p for i in range(self.t)))

    def code(self, a: Fq | int) -> int:
        if isinstance(a, int):
            if not 0 <= a < self.p:
                raise FieldError(f"{a} is not an element of F_{self.p}")
            return a
        if len(a.coeffs) != self.t or any(not 0 <= c < self.p for c in a.coeffs):
            raise FieldError(f"malformed element {a!r} for q = {self.q}")
        return sum(c * self.p ** i for i, c in enumerate(a.coeffs))

    @property
    def zero(self) -> Fq:
        return self.elem(0)

    @property
    def one(self) -> Fq:
        return self.elem(1)

    def elements(self) -> list[Fq]:
        return [self.elem(c) for c in range(self.q)]

    # -- arithmetic on Fq values -----------------------------------------------

    def add(self, a: Fq, b: Fq) -> Fq:
        return self.elem(self.add_t[self.code(a)][self.code(b)])

    def sub(self, a: Fq, b: Fq) -> Fq:
        return self.elem(self.sub_t[self.code(a)][self.code(b)])

    def mul(self, a: Fq, b: Fq) -> Fq:
        return self.elem(self.mul_t[self.code(a)][self.code(b)])

    def inv(self, a: Fq) -> Fq:
        c = self.code(a)
        if c == 0:
            raise ZeroDivisionError("zero has no inverse in F_q")
        return self.elem(self.inv_t[c])

    def top_basis_coeff(self, a: Fq | int) -> int:
        """Coefficient of theta**(t-1) of ``a`` (the element itself when t = 1)."""
        return int(self.np_top[self.code(a)])

    def parse_elem(self, text: str) -> Fq:
        """Parse the text form: an integer, or ``[a1,...,at]`` top coefficient first."""
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise FieldError(f"unterminated element {text!r}")
            parts = [x.strip() for x in s[1:-1].split(",")]
            if len(parts) != self.t or not all(x.isdigit() for x in parts):
                raise FieldError(f"element {text!r} needs {self.t} integer entries")
            vals = [int(x) for x in parts]
            if any(v >= self.p for v in vals):
                raise FieldError(f"entry out of range in {text!r}")
            return Fq(tuple(reversed(vals)))
        if not s.isdigit():
            raise FieldError(f"bad element {text!r}")
        return self.elem(self.code(int(s)))

    def __str__(self) -> str:
        if self.t == 1:
            return f"F_{self.p}"
        return f"F_{self.q} (p={self.p}, psi={list(self.psi)})"


def field_make(p: int, t: int = 1, psi=None) -> FieldCtx:
    """Build a field context; ``psi`` (low-first coefficients) defaults when t > 1."""
    return FieldCtx(p, t, None if psi is None else tuple(psi))
