"""Overflow-safe determinant values.

A determinant is carried as a complex mantissa with magnitude in [1, 10)
times an integer power of ten.  Products of many factors (a 48x48
determinant is a degree-48 polynomial in the probe energy) routinely leave
the double-precision exponent range, so determinants never cross a module
boundary as a bare complex number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ScaledDet:
    """Complex value ``mantissa * 10**exponent`` with |mantissa| in [1, 10)."""

    mantissa: complex
    exponent: int

    @staticmethod
    def zero() -> "ScaledDet":
        return ScaledDet(0j, 0)

    @staticmethod
    def one() -> "ScaledDet":
        return ScaledDet(1 + 0j, 0)

    @staticmethod
    def from_complex(value: complex) -> "ScaledDet":
        value = complex(value)
        if value == 0:
            return ScaledDet.zero()
        return ScaledDet(value, 0).normalized()

    @staticmethod
    def from_factors(factors) -> "ScaledDet":
        """Product of plain complex factors, renormalized after each step."""
        acc = ScaledDet.one()
        for f in factors:
            acc = acc * ScaledDet.from_complex(f)
        return acc

    def normalized(self) -> "ScaledDet":
        m, e = self.mantissa, self.exponent
        if m == 0:
            return ScaledDet.zero()
        shift = math.floor(math.log10(abs(m)))
        # split the rescale so 10.0**shift itself cannot under/overflow
        # (subnormal mantissas put shift as low as -324)
        half = shift // 2
        m = (m / 10.0**half) / 10.0 ** (shift - half)
        e += shift
        # log10 rounding can leave the magnitude just outside [1, 10)
        while abs(m) >= 10.0:
            m /= 10.0
            e += 1
        while abs(m) < 1.0:
            m *= 10.0
            e -= 1
        return ScaledDet(m, e)

    def __mul__(self, other: "ScaledDet") -> "ScaledDet":
        if self.mantissa == 0 or other.mantissa == 0:
            return ScaledDet.zero()
        return ScaledDet(
            self.mantissa * other.mantissa, self.exponent + other.exponent
        ).normalized()

    def __pow__(self, power: int) -> "ScaledDet":
        if power < 0:
            raise ValueError("negative powers are not supported")
        acc = ScaledDet.one()
        for _ in range(power):
            acc = acc * self
        return acc

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def log10_magnitude(self) -> float:
        """log10 of the absolute value; -inf for zero."""
        if self.is_zero:
            return -math.inf
        return math.log10(abs(self.mantissa)) + self.exponent

    def to_complex(self) -> complex:
        """Collapse to a plain complex; may overflow to inf for large exponents."""
        return self.mantissa * 10.0**self.exponent


def relative_difference(a: ScaledDet, b: ScaledDet) -> float:
    """|a - b| / |b| evaluated without leaving scaled arithmetic.

    Returns 0 when both are zero and inf when only the reference ``b`` is.
    """
    if a.is_zero and b.is_zero:
        return 0.0
    if b.is_zero:
        return math.inf
    if a.is_zero:
        return 1.0
    shift = a.exponent - b.exponent
    if shift > 300:
        return math.inf
    if shift < -300:
        return 1.0
    ratio = (a.mantissa / b.mantissa) * 10.0**shift
    return abs(ratio - 1.0)


def magnitude_ratio(num: ScaledDet, den: ScaledDet) -> float:
    """|num| / |den|, saturating instead of overflowing."""
    if num.is_zero:
        return 0.0
    if den.is_zero:
        return math.inf
    log_ratio = num.log10_magnitude() - den.log10_magnitude()
    if log_ratio > 300:
        return math.inf
    return 10.0**log_ratio
