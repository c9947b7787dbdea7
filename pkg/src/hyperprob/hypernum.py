"""Hyperbolic (split-complex) numbers ``x + j y`` with ``j**2 == 1``.

The algebra is commutative but not a field: elements on the light cone
``x == ±y`` are zero divisors.  The square modulus ``x**2 - y**2`` is
multiplicative and may be negative.

>>> z = HyperNumber(2, 1) * HyperNumber(3, 2)
>>> z
HyperNumber(x=8.0, y=7.0)
>>> sq_modulus(z)
15.0
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import NotInGroup, NotInvertible

__all__ = [
    "HyperNumber",
    "PolarForm",
    "ONE",
    "ZERO",
    "J",
    "as_hyper",
    "conj",
    "sq_modulus",
    "in_G_plus",
    "in_G_plus_star",
    "hexp",
    "polar",
    "invert",
]

# cosh overflows a double just above this
MAX_PHASE = 710.0


@dataclass(frozen=True, slots=True)
class HyperNumber:
    x: float
    y: float = 0.0

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"hyperbolic number needs finite components, got ({x}, {y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HyperNumber(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HyperNumber(self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return HyperNumber(-self.x, -self.y)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HyperNumber(
            self.x * other.x + self.y * other.y,
            self.x * other.y + other.x * self.y,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * invert(self)

    def conj(self) -> HyperNumber:
        return HyperNumber(self.x, -self.y)

    @property
    def sq_modulus(self) -> float:
        return sq_modulus(self)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        other = as_hyper(other)
        return abs(self.x - other.x) <= tol and abs(self.y - other.y) <= tol

    def __str__(self):
        sign = "-" if self.y < 0 or (self.y == 0 and math.copysign(1, self.y) < 0) else "+"
        return f"{self.x:g} {sign} {abs(self.y):g}j"

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_json(cls, obj) -> HyperNumber:
        if isinstance(obj, Real):
            return cls(obj)
        try:
            return cls(obj["x"], obj.get("y", 0.0))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"not a hyperbolic number object: {obj!r}") from exc


ONE = HyperNumber(1.0, 0.0)
ZERO = HyperNumber(0.0, 0.0)
J = HyperNumber(0.0, 1.0)


def _coerce(value):
    if isinstance(value, HyperNumber):
        return value
    if isinstance(value, Real):
        return HyperNumber(float(value), 0.0)
    return NotImplemented


def as_hyper(value) -> HyperNumber:
    """Promote a real number (or pass through a HyperNumber)."""
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a hyperbolic number")
    return out


def conj(z) -> HyperNumber:
    z = as_hyper(z)
    return HyperNumber(z.x, -z.y)


def sq_modulus(z) -> float:
    """``z * conj(z) = x**2 - y**2``; negative outside the positive cone."""
    z = as_hyper(z)
    # factored form loses less precision near the light cone
    return (z.x - z.y) * (z.x + z.y)


def in_G_plus(z) -> bool:
    return sq_modulus(z) >= 0.0


def in_G_plus_star(z) -> bool:
    return sq_modulus(z) > 0.0


def hexp(theta: float) -> HyperNumber:
    """Hyperbolic Euler formula ``e^{j theta} = cosh theta + j sinh theta``."""
    theta = float(theta)
    if not abs(theta) <= MAX_PHASE:
        raise OverflowError(f"hyperbolic phase {theta} out of range (|theta| <= {MAX_PHASE})")
    return HyperNumber(math.cosh(theta), math.sinh(theta))


@dataclass(frozen=True, slots=True)
class PolarForm:
    """``z = sign * modulus * e^{j theta}`` for ``z`` with positive square modulus."""

    sign: int
    modulus: float
    theta: float

    def reconstruct(self) -> HyperNumber:
        return (self.sign * self.modulus) * hexp(self.theta)


def polar(z) -> PolarForm:
    z = as_hyper(z)
    m2 = sq_modulus(z)
    if not m2 > 0.0:
        raise NotInGroup(f"{z} has square modulus {m2:g} <= 0; no polar form")
    # m2 > 0 forces |y| < |x|, so x != 0 and the artanh argument is in (-1, 1)
    sign = 1 if z.x > 0 else -1
    return PolarForm(sign, math.sqrt(m2), math.atanh(z.y / z.x))


def invert(z) -> HyperNumber:
    """Multiplicative inverse ``conj(z) / |z|**2``; defined whenever ``|z|**2 != 0``."""
    z = as_hyper(z)
    m2 = sq_modulus(z)
    if m2 == 0.0:
        raise NotInvertible(f"{z} is a zero divisor")
    return HyperNumber(z.x / m2, -z.y / m2)
