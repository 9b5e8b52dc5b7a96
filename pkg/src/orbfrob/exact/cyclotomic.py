"""Exact scalars in the cyclotomic field Q(zeta_M).

An element of order M is a vector of phi(M) rationals: its coordinates in
the power basis 1, z, ..., z^(phi(M)-1) of Q[z]/(Phi_M).  Elements of
different orders are combined by embedding both into Q(zeta_L) with
L = lcm of the orders, using zeta_m = zeta_L^(L/m).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from ..errors import BranchAmbiguity, NotRootOfUnity

Number = Union[int, Fraction, "Cyclotomic"]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


class _FieldData:
    """Per-order tables: reductions of z^e and the roots of unity."""

    def __init__(self, order: int):
        self.order = order
        phi = cyclotomic_poly(order)
        self.deg = len(phi) - 1
        powers: list[tuple[int, ...]] = []
        cur = [0] * self.deg
        cur[0] = 1
        for _ in range(order):
            powers.append(tuple(cur))
            # multiply by z and reduce with the monic relation
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(self.deg):
                    cur[j] -= top * phi[j]
        self.powers = powers
        self.sparse_powers = [
            tuple((j, c) for j, c in enumerate(p) if c) for p in powers
        ]
        # the roots of unity in Q(zeta_M) are the 2M-th (M odd) or M-th ones
        self.unit_order = order if order % 2 == 0 else 2 * order
        units: dict[tuple[Fraction, ...], Fraction] = {}
        for k in range(order):
            vec = tuple(Fraction(c) for c in powers[k])
            if order % 2 == 0:
                units[vec] = Fraction(k, order)
            else:
                units[vec] = Fraction(2 * k, self.unit_order) % 1
                neg = tuple(-c for c in vec)
                units[neg] = (Fraction(2 * k, self.unit_order) + Fraction(1, 2)) % 1
        self.units = units


@lru_cache(maxsize=None)
def field_data(order: int) -> _FieldData:
    return _FieldData(order)


class Cyclotomic:
    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Union[int, Fraction]]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        fd = field_data(order)
        if len(coeffs) != fd.deg:
            raise ValueError(f"order {order} needs {fd.deg} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _make(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        """Trusted constructor: coeffs is already a tuple of Fractions of the right length."""
        out = object.__new__(cls)
        out.order = order
        out.coeffs = coeffs
        out._hash = None
        return out

    # construction helpers
    @classmethod
    def rational(cls, q: Union[int, Fraction]) -> "Cyclotomic":
        return cls(1, (q,))

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        """exp(2 pi i k / order)."""
        fd = field_data(order)
        return cls(order, fd.powers[k % order])

    @classmethod
    def root(cls, frac: Union[Fraction, int]) -> "Cyclotomic":
        """exp(2 pi i frac)."""
        frac = Fraction(frac) % 1
        return cls.zeta(frac.denominator, frac.numerator)

    @classmethod
    def from_power_vector(cls, order: int, vec: dict[int, Fraction]) -> "Cyclotomic":
        """Reduce sum vec[e] z^e (any exponents) to canonical form."""
        fd = field_data(order)
        out = [Fraction(0)] * fd.deg
        for e, c in vec.items():
            if not c:
                continue
            for j, p in fd.sparse_powers[e % order]:
                out[j] += c * p
        return cls(order, out)

    @staticmethod
    def coerce(x: Number) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic(1, (x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # structure
    def lift(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        return Cyclotomic.from_power_vector(
            order, {j * step: c for j, c in enumerate(self.coeffs) if c}
        )

    def _pair(self, other: Number) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other)
        if other.order == self.order:
            return self, other
        if other.is_rational():
            return self, Cyclotomic.rational(other.coeffs[0]).lift(self.order)
        if self.is_rational():
            return Cyclotomic.rational(self.coeffs[0]).lift(other.order), other
        L = lcm(self.order, other.order)
        return self.lift(L), other.lift(L)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic
    def __add__(self, other: Number) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic) and isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, (self.coeffs[0] + other,) + self.coeffs[1:])
        a, b = self._pair(other)
        return Cyclotomic._make(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._make(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Number) -> "Cyclotomic":
        return self + (-Cyclotomic.coerce(other))

    def __rsub__(self, other: Number) -> "Cyclotomic":
        return Cyclotomic.coerce(other) + (-self)

    def scale(self, q: Union[int, Fraction]) -> "Cyclotomic":
        if q == 1:
            return self
        if q == -1:
            return -self
        q = Fraction(q)
        return Cyclotomic._make(self.order, tuple(c * q if c else c for c in self.coeffs))

    def __mul__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if other.is_rational():
            return self.scale(other.coeffs[0])
        if self.is_rational():
            return other.scale(self.coeffs[0])
        a, b = self._pair(other)
        n = len(a.coeffs)
        prod: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        out = [Fraction(0)] * n
        sp = field_data(a.order).sparse_powers
        for e, c in prod.items():
            if e < n:
                out[e] += c
            elif c:
                for j, p in sp[e % a.order]:
                    out[j] += c * p
        return Cyclotomic._make(a.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic(1, (1 / self.coeffs[0],))
        arg = self.root_of_unity_arg()
        if arg is not None:
            return _unit_at(-arg, self.order)
        inv = _poly_inverse(list(self.coeffs), list(cyclotomic_poly(self.order)))
        return Cyclotomic(self.order, inv + [Fraction(0)] * (len(self.coeffs) - len(inv)))

    def __truediv__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        return self * Cyclotomic.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        arg = self.root_of_unity_arg() if not self.is_rational() else None
        if arg is not None:
            return _unit_at(arg * k, self.order)
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Galois automorphism zeta -> zeta^-1 (complex conjugation)."""
        return Cyclotomic.from_power_vector(
            self.order, {(-j) % self.order: c for j, c in enumerate(self.coeffs) if c}
        )

    def galois(self, a: int) -> "Cyclotomic":
        """Automorphism zeta -> zeta^a, gcd(a, order) = 1."""
        if gcd(a, self.order) != 1:
            raise ValueError("Galois exponent must be a unit")
        return Cyclotomic.from_power_vector(
            self.order, {(a * j) % self.order: c for j, c in enumerate(self.coeffs) if c}
        )

    # comparison and display
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                h = hash(self.coeffs[0])
            else:
                arg = self.root_of_unity_arg()
                if arg is not None:
                    h = hash(("root", arg))
                else:
                    z = complex(self)
                    h = hash((round(z.real, 7), round(z.imag, 7)))
            self._hash = h
        return self._hash

    def __complex__(self) -> complex:
        step = 2j * cmath.pi / self.order
        return sum((float(c) * cmath.exp(step * j) for j, c in enumerate(self.coeffs) if c), 0j)

    def root_of_unity_arg(self) -> Union[Fraction, None]:
        """a in [0,1) with self = exp(2 pi i a), or None."""
        return field_data(self.order).units.get(self.coeffs)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        arg = self.root_of_unity_arg()
        if arg is not None:
            return f"w({arg.numerator}/{arg.denominator})"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*w({Fraction(j, self.order).numerator}/{Fraction(j, self.order).denominator})")
        return "(" + " + ".join(parts) + ")"


def _unit_at(arg: Fraction, order: int) -> Cyclotomic:
    """exp(2 pi i arg) written at the given order (must lie in that field)."""
    arg = Fraction(arg) % 1
    if (arg * order).denominator == 1:
        return Cyclotomic.zeta(order, int(arg * order))
    half = (arg - Fraction(1, 2)) % 1
    if (half * order).denominator == 1:
        return -Cyclotomic.zeta(order, int(half * order))
    r = Cyclotomic.root(arg)
    return r.lift(lcm(order, r.order))


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim([Fraction(x) for x in a])
    b = _poly_trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, _poly_trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_inverse(a: list[Fraction], modulus: Iterable[int]) -> list[Fraction]:
    """u with a*u = 1 mod modulus, by the extended Euclidean algorithm."""
    r0, r1 = [Fraction(c) for c in modulus], _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r1) == 1 and not r1[0]:
            break
    # r0 is a nonzero constant since Phi is irreducible
    c = r0[0]
    return [x / c for x in s0]


ONE = Cyclotomic.rational(1)
ZERO = Cyclotomic.rational(0)


def sqrt_unit(c: Number, order_hint: int = 0, minus_one: Union[None, int] = None) -> Cyclotomic:
    """Principal square root of a root of unity.

    For c = exp(2 pi i a) with a in [0,1) and a != 1/2 the result is
    exp(pi i a).  The value -1 sits on the branch cut; pass ``minus_one``
    as +1 or -1 to choose i or -i.
    """
    c = Cyclotomic.coerce(c)
    if order_hint and order_hint % c.order == 0:
        c = c.lift(order_hint)
    arg = c.root_of_unity_arg()
    if arg is None:
        raise NotRootOfUnity(f"{c} is not a root of unity", witness=c)
    if arg == Fraction(1, 2):
        if minus_one not in (1, -1):
            raise BranchAmbiguity("square root of -1 needs a branch choice", witness=c)
        return Cyclotomic.root(Fraction(1, 4) if minus_one == 1 else Fraction(3, 4))
    r = Cyclotomic.root(arg / 2)
    target = lcm(c.order, r.order)
    return r.lift(target)


def _sqrt_prime(p: int) -> Cyclotomic:
    if p == 2:
        return Cyclotomic.zeta(8, 1) + Cyclotomic.zeta(8, 7)
    g = ZERO
    for k in range(1, p):
        g = g + Cyclotomic.zeta(p, k).scale(1 if pow(k, (p - 1) // 2, p) == 1 else -1)
    return g if p % 4 == 1 else g * Cyclotomic.zeta(4, 3)


def sqrt_rational(q: Union[int, Fraction]) -> Cyclotomic:
    """Square root of a rational inside a cyclotomic field.

    Positive q gives the positive root; negative q gives i times it.
    """
    q = Fraction(q)
    if q == 0:
        return ZERO
    num = abs(q.numerator) * q.denominator
    out = Cyclotomic.rational(Fraction(1, q.denominator))
    p = 2
    while p * p <= num:
        while num % (p * p) == 0:
            num //= p * p
            out = out * p
        if num % p == 0:
            num //= p
            out = out * _sqrt_prime(p)
        p += 1
    if num > 1:
        out = out * _sqrt_prime(num)
    if q < 0:
        out = out * Cyclotomic.zeta(4, 1)
    return out
