"""Scalar arithmetic for Hamiltonian matrix entries.

Entries live in one of two regimes.  EXACT uses complex numbers whose real
and imaginary parts are arbitrary-precision rationals, so rank and
determinant zero-tests are algebraic facts rather than threshold calls.
FLOAT uses ordinary binary64 complex numbers and is what the brute-force
eigensolver consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union


class Regime(Enum):
    """Arithmetic regime selected per analysis run."""

    EXACT = "exact"
    FLOAT = "float"


RealInput = Union[int, str, Fraction]

_F0 = Fraction(0)


def as_fraction(value: RealInput) -> Fraction:
    """Parse a real number exactly.

    Accepts ints, Fractions and strings in decimal ("1.5", "-0.25") or
    ratio ("7/2") form.  Binary floats are rejected: they would silently
    smuggle rounding into the exact regime.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact real number: {value!r}") from exc
    raise TypeError(
        f"cannot represent {value!r} exactly; pass an int, Fraction or string"
    )


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """Complex number with exact rational real and imaginary parts.

    Closed under +, -, *, / (nonzero divisor); conjugation and the squared
    modulus are exact.
    """

    re: Fraction = _F0
    im: Fraction = _F0

    @classmethod
    def of(cls, re: RealInput = 0, im: RealInput = 0) -> "ExactComplex":
        return cls(as_fraction(re), as_fraction(im))

    # -- field operations -------------------------------------------------

    def _coerce(self, other) -> "ExactComplex | None":
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactComplex(Fraction(other), _F0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("exact complex division by zero")
        return ExactComplex(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- structure ---------------------------------------------------------

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return format_exact(self)


EC_ZERO = ExactComplex()
EC_ONE = ExactComplex(Fraction(1))

#: A matrix entry in either regime.
Scalar = Union[ExactComplex, complex]


def exact(re: RealInput = 0, im: RealInput = 0) -> ExactComplex:
    """Shorthand constructor for exact complex scalars."""
    return ExactComplex.of(re, im)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_exact(z: ExactComplex) -> str:
    """Render an exact scalar as ``p/q + r/s i``."""
    if z.im == 0:
        return format_fraction(z.re)
    imag = f"{format_fraction(abs(z.im))} i"
    if z.re == 0:
        return imag if z.im > 0 else f"-{imag}"
    sign = "+" if z.im > 0 else "-"
    return f"{format_fraction(z.re)} {sign} {imag}"


def format_float(x: float) -> str:
    """Render a float with 15 significant digits."""
    return f"{x:.15g}"


def format_complex_float(z: complex) -> str:
    if z.imag == 0:
        return format_float(z.real)
    imag = f"{format_float(abs(z.imag))} i"
    if z.real == 0:
        return imag if z.imag > 0 else f"-{imag}"
    sign = "+" if z.imag > 0 else "-"
    return f"{format_float(z.real)} {sign} {imag}"


def format_scalar(value) -> str:
    """Render any supported scalar deterministically."""
    if isinstance(value, ExactComplex):
        return format_exact(value)
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, complex):
        return format_complex_float(value)
    if isinstance(value, (int, float)):
        return format_float(float(value))
    raise TypeError(f"unsupported scalar {value!r}")
