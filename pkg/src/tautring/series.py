"""Bernoulli numbers and even formal power series over exact rationals.

Every quantity downstream of this module is driven by the Taylor expansion of
x/tanh(x/2), computed here by exact division of even power series.  All
coefficients are plain ``fractions.Fraction`` values, so nothing ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial

from .errors import DomainError

__all__ = [
    "EvenPowerSeries",
    "bernoulli",
    "series_multiply",
    "tanh_quotient_series",
    "x_coth_x_series",
]


@cache
def _bernoulli_std_even(k: int) -> Fraction:
    """Standard-convention B_{2k} via the binomial recurrence (B_1 = -1/2)."""
    if k == 0:
        return Fraction(1)
    # From sum_{j=0}^{2k} C(2k+1, j) B_j = 0, with all odd B_j >= 3 vanishing:
    #   (2k+1) B_{2k} = (2k+1)/2 - 1 - sum_{l=1}^{k-1} C(2k+1, 2l) B_{2l}
    acc = Fraction(2 * k + 1, 2) - 1
    for l in range(1, k):
        acc -= comb(2 * k + 1, 2 * l) * _bernoulli_std_even(l)
    return acc / (2 * k + 1)


def bernoulli(i: int) -> Fraction:
    """i-th Bernoulli number in the all-positive convention (B_1 = 1/6, B_2 = 1/30, ...).

    These are |B_{2i}| in the standard convention; the sign of standard B_{2i}
    is (-1)^(i+1), so the value returned is (-1)^(i+1) * B_{2i}.
    """
    if i < 1:
        raise DomainError(f"bernoulli index must be >= 1, got {i}")
    value = (-1) ** (i + 1) * _bernoulli_std_even(i)
    assert value > 0, "positive-convention Bernoulli numbers are positive"
    return value


@dataclass(frozen=True)
class EvenPowerSeries:
    """An even truncated power series: entry k of ``coeffs`` multiplies x^(2k).

    ``truncation_order`` is the highest retained power of x, always even; odd
    coefficients are identically zero by construction and never stored.
    """

    coeffs: tuple[Fraction, ...]
    truncation_order: int

    def __post_init__(self):
        if self.truncation_order < 0 or self.truncation_order % 2 != 0:
            raise DomainError(
                f"truncation order must be a non-negative even integer, got {self.truncation_order}"
            )
        if len(self.coeffs) != self.truncation_order // 2 + 1:
            raise DomainError(
                f"expected {self.truncation_order // 2 + 1} coefficients for order "
                f"{self.truncation_order}, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coefficients(cls, coeffs, truncation_order: int | None = None) -> EvenPowerSeries:
        values = tuple(Fraction(c) for c in coeffs)
        if truncation_order is None:
            truncation_order = 2 * (len(values) - 1)
        return cls(values, truncation_order)

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of x^(2k); asking beyond the truncation is an error."""
        if k < 0 or 2 * k > self.truncation_order:
            raise DomainError(f"coefficient x^{2 * k} exceeds truncation order {self.truncation_order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> EvenPowerSeries:
        if order % 2 != 0:
            raise DomainError(f"truncation order must be even, got {order}")
        if order > self.truncation_order:
            raise DomainError(f"cannot extend a series truncated at {self.truncation_order} to {order}")
        return EvenPowerSeries(self.coeffs[: order // 2 + 1], order)

    def __add__(self, other: EvenPowerSeries) -> EvenPowerSeries:
        order = min(self.truncation_order, other.truncation_order)
        n = order // 2 + 1
        return EvenPowerSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n)), order)

    def __mul__(self, other: EvenPowerSeries) -> EvenPowerSeries:
        order = min(self.truncation_order, other.truncation_order)
        n = order // 2 + 1
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return EvenPowerSeries(tuple(out), order)

    def scale(self, factor) -> EvenPowerSeries:
        q = Fraction(factor)
        return EvenPowerSeries(tuple(q * c for c in self.coeffs), self.truncation_order)

    def divide(self, other: EvenPowerSeries) -> EvenPowerSeries:
        """Exact series division; the divisor needs an invertible constant term."""
        if other.coeffs[0] == 0:
            raise DomainError("series division requires an invertible constant term")
        order = min(self.truncation_order, other.truncation_order)
        n = order // 2 + 1
        out: list[Fraction] = []
        for k in range(n):
            acc = self.coeffs[k]
            for j in range(k):
                acc -= out[j] * other.coeffs[k - j]
            out.append(acc / other.coeffs[0])
        return EvenPowerSeries(tuple(out), order)


def series_multiply(a: EvenPowerSeries, b: EvenPowerSeries) -> EvenPowerSeries:
    """Cauchy product truncated to the shorter of the two orders."""
    return a * b


def _quotient_of_hyperbolics(truncation_order: int, denominator_scale: int) -> EvenPowerSeries:
    # x/tanh(x/s) = cosh(x/s) / (sinh(x/s)/x).  The 1/x factor of sinh is
    # cancelled symbolically, so the divisor has constant term 1/s != 0 and no
    # division by a vanishing constant term can occur.
    if truncation_order < 0:
        raise DomainError(f"truncation order must be >= 0, got {truncation_order}")
    if truncation_order % 2 != 0:
        raise DomainError(f"truncation order must be even, got {truncation_order}")
    n = truncation_order // 2 + 1
    s = denominator_scale
    cosh = EvenPowerSeries(
        tuple(Fraction(1, s ** (2 * k) * factorial(2 * k)) for k in range(n)), truncation_order
    )
    sinh_over_x = EvenPowerSeries(
        tuple(Fraction(1, s ** (2 * k + 1) * factorial(2 * k + 1)) for k in range(n)),
        truncation_order,
    )
    return cosh.divide(sinh_over_x)


def tanh_quotient_series(truncation_order: int) -> EvenPowerSeries:
    """Taylor expansion of x/tanh(x/2) about 0, up to the given even order.

    The constant term is 2 and the coefficient of x^(2k) is
    2 * B_{2k}(standard) / (2k)!.
    """
    return _quotient_of_hyperbolics(truncation_order, 2)


def x_coth_x_series(truncation_order: int) -> EvenPowerSeries:
    """Taylor expansion of x/tanh(x) about 0, up to the given even order."""
    return _quotient_of_hyperbolics(truncation_order, 1)
