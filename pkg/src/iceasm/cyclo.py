"""Exact arithmetic in the field Q(w), w = exp(i*pi/3).

Elements are stored as p + q*w with exact rational p, q.  The generator
satisfies w**2 = w - 1 (it is a primitive sixth root of unity), so the
field is closed under multiplicationwith no radicals or floats anywhere.
Useful constants: w is invertible with 1/w = 1 - w (= conjugate of w),
and 2*w - 1 squares to -3, i.e. it plays the role of i*sqrt(3).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


class CycloRational:
    """p + q*w with p, q rational and w**2 = w - 1."""

    __slots__ = ("re", "om")

    def __init__(self, re: Rat = 0, om: Rat = 0) -> None:
        self.re = Fraction(re)
        self.om = Fraction(om)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, x: CycloRational | Rat) -> CycloRational:
        if isinstance(x, CycloRational):
            return x
        return cls(x)

    # -- basic protocol --------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycloRational({self.re!r}, {self.om!r})"

    def __str__(self) -> str:
        if self.om == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.om}*w"
        return f"{self.re}+{self.om}*w"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloRational(other)
        if not isinstance(other, CycloRational):
            return NotImplemented
        return self.re == other.re and self.om == other.om

    def __hash__(self) -> int:
        return hash((self.re, self.om))

    def __bool__(self) -> bool:
        return self.re != 0 or self.om != 0

    # -- field operations -------------------------------------------------------

    def __add__(self, other: CycloRational | Rat) -> CycloRational:
        o = CycloRational.coerce(other)
        return CycloRational(self.re + o.re, self.om + o.om)

    __radd__ = __add__

    def __neg__(self) -> CycloRational:
        return CycloRational(-self.re, -self.om)

    def __sub__(self, other: CycloRational | Rat) -> CycloRational:
        return self + (-CycloRational.coerce(other))

    def __rsub__(self, other: CycloRational | Rat) -> CycloRational:
        return CycloRational.coerce(other) + (-self)

    def __mul__(self, other: CycloRational | Rat) -> CycloRational:
        o = CycloRational.coerce(other)
        # (p+qw)(r+sw) = pr + (ps+qr)w + qs(w-1)
        p, q, r, s = self.re, self.om, o.re, o.om
        return CycloRational(p * r - q * s, p * s + q * r + q * s)

    __rmul__ = __mul__

    def conjugate(self) -> CycloRational:
        """Complex conjugate: w -> 1 - w."""
        return CycloRational(self.re + self.om, -self.om)

    def norm(self) -> Fraction:
        """Rational norm x * conj(x) = p**2 + p*q + q**2."""
        return self.re * self.re + self.re * self.om + self.om * self.om

    def inverse(self) -> CycloRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conjugate()
        return CycloRational(c.re / n, c.om / n)

    def __truediv__(self, other: CycloRational | Rat) -> CycloRational:
        return self * CycloRational.coerce(other).inverse()

    def __rtruediv__(self, other: CycloRational | Rat) -> CycloRational:
        return CycloRational.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> CycloRational:
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_rational(self) -> bool:
        return self.om == 0


ZERO = CycloRational(0)
ONE = CycloRational(1)
OMEGA = CycloRational(0, 1)
# 2w - 1 = i*sqrt(3); its square is -3.
I_SQRT3 = CycloRational(-1, 2)


def omega_power(k: int) -> CycloRational:
    """w**k for any integer k (w has multiplicative order 6)."""
    return OMEGA ** (k % 6)


def cyclo_arith(lhs: CycloRational, rhs: CycloRational, op: str) -> CycloRational:
    """Dispatch-style field arithmetic: op in {'add', 'mul', 'div'}."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")
