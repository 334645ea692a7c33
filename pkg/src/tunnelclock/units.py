"""Dimensioned-quantity arithmetic with exact SI dimension tracking.

A :class:`DimensionVector` stores one rational exponent per SI base dimension
(length, mass, time, current, temperature, amount, luminosity), so dimension
algebra is exact: products add exponents, powers scale them, and square roots
produce half-integral exponents instead of silently truncating.  A
:class:`Quantity` pairs a finite float magnitude with such a vector and
supports checked arithmetic through the usual operators.

Magnitudes are plain IEEE doubles.  The largest value handled anywhere in
this package is the vacuum energy density (~2.3e113 J/m^3) and the largest
intermediate is c^7 (~2.2e59); both sit far below the double-precision
overflow threshold of ~1.8e308.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "BASE_SYMBOLS",
    "DimensionError",
    "DimensionVector",
    "Quantity",
    "DIMENSIONLESS",
]

#: SI base-dimension symbols, in storage order.
BASE_SYMBOLS = ("m", "kg", "s", "A", "K", "mol", "cd")

Rational = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands have incompatible dimensions.

    Carries both dimension vectors so callers can report the mismatch.
    """

    def __init__(self, message: str, left: "DimensionVector", right: "DimensionVector"):
        super().__init__(f"{message}: {left} vs {right}")
        self.left = left
        self.right = right


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exponent must be an int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class DimensionVector:
    """Rational exponents for the 7 SI base dimensions.

    ``Fraction`` keeps every exponent in lowest terms with a positive
    denominator, so the zero vector is the unique dimensionless
    representation and equality is exact.
    """

    exponents: tuple[Fraction, ...]

    def __init__(self, exponents=None, **by_symbol: Rational):
        if exponents is None:
            exps = [Fraction(0)] * len(BASE_SYMBOLS)
            for sym, p in by_symbol.items():
                if sym not in BASE_SYMBOLS:
                    raise KeyError(f"unknown SI base symbol {sym!r}")
                exps[BASE_SYMBOLS.index(sym)] = _as_fraction(p)
        else:
            if by_symbol:
                raise TypeError("pass either a tuple of exponents or keyword exponents")
            exps = [_as_fraction(p) for p in exponents]
            if len(exps) != len(BASE_SYMBOLS):
                raise ValueError(f"expected {len(BASE_SYMBOLS)} exponents, got {len(exps)}")
        object.__setattr__(self, "exponents", tuple(exps))

    @property
    def is_dimensionless(self) -> bool:
        return all(p == 0 for p in self.exponents)

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        return DimensionVector(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __sub__(self, other: "DimensionVector") -> "DimensionVector":
        return DimensionVector(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def scaled(self, p: Rational) -> "DimensionVector":
        """Exponent vector of a power: every entry multiplied by ``p``."""
        p = _as_fraction(p)
        return DimensionVector(tuple(a * p for a in self.exponents))

    def __str__(self) -> str:
        parts = []
        for sym, p in zip(BASE_SYMBOLS, self.exponents):
            if p == 0:
                continue
            parts.append(sym if p == 1 else f"{sym}^{p}")
        return "*".join(parts) if parts else "1"


DIMENSIONLESS = DimensionVector()


@dataclass(frozen=True)
class Quantity:
    """A finite real magnitude with an exact SI dimension.

    NaN magnitudes are rejected outright and infinities are rejected at
    construction, so any overflow inside an operator surfaces as
    :class:`OverflowError` instead of propagating silently.
    """

    value: float
    dim: DimensionVector = DIMENSIONLESS

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v):
            raise ValueError("Quantity value must not be NaN")
        if math.isinf(v):
            raise OverflowError("Quantity value must be finite")
        object.__setattr__(self, "value", v)

    # --- checked arithmetic -------------------------------------------------

    def __mul__(self, other: "Quantity") -> "Quantity":
        other = _coerce(other)
        return _finite(self.value * other.value, self.dim + other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other: "Quantity") -> "Quantity":
        other = _coerce(other)
        if other.value == 0.0:
            raise ZeroDivisionError("division of quantities by zero")
        return _finite(self.value / other.value, self.dim - other.dim)

    def __rtruediv__(self, other) -> "Quantity":
        return _coerce(other) / self

    def __add__(self, other: "Quantity") -> "Quantity":
        other = _coerce(other)
        if self.dim != other.dim:
            raise DimensionError("cannot add quantities of different dimension", self.dim, other.dim)
        return _finite(self.value + other.value, self.dim)

    def __sub__(self, other: "Quantity") -> "Quantity":
        other = _coerce(other)
        if self.dim != other.dim:
            raise DimensionError("cannot subtract quantities of different dimension", self.dim, other.dim)
        return _finite(self.value - other.value, self.dim)

    def __neg__(self) -> "Quantity":
        return Quantity(-self.value, self.dim)

    def __abs__(self) -> "Quantity":
        return Quantity(abs(self.value), self.dim)

    def __pow__(self, p: Rational) -> "Quantity":
        """Raise to an exact rational power.

        A negative base requires an odd-denominator exponent (real odd
        root); even-denominator exponents of negative values have no real
        result and raise :class:`~tunnelclock.errors.DomainError`.
        """
        from .errors import DomainError  # local import avoids a cycle at module load

        p = _as_fraction(p)
        if self.value < 0.0:
            if p.denominator % 2 == 0:
                raise DomainError(
                    f"negative base with even-denominator exponent {p}"
                )
            magnitude = (-self.value) ** float(p)
            sign = -1.0 if p.numerator % 2 else 1.0
            return _finite(sign * magnitude, self.dim.scaled(p))
        return _finite(self.value ** float(p), self.dim.scaled(p))

    def sqrt(self) -> "Quantity":
        return self ** Fraction(1, 2)

    @property
    def is_dimensionless(self) -> bool:
        return self.dim.is_dimensionless

    def __str__(self) -> str:
        d = str(self.dim)
        return f"{self.value!r}" if d == "1" else f"{self.value!r} {d}"


def _coerce(x) -> Quantity:
    if isinstance(x, Quantity):
        return x
    if isinstance(x, (int, float)):
        return Quantity(float(x))
    raise TypeError(f"cannot combine Quantity with {type(x).__name__}")


def _finite(value: float, dim: DimensionVector) -> Quantity:
    if math.isinf(value) or math.isnan(value):
        raise OverflowError("operation produced a non-finite value")
    return Quantity(value, dim)
