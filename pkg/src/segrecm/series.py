"""Exact Hilbert series arithmetic.

A Hilbert series is stored as ``N(t) / (1-t)^d`` where ``N`` is a Laurent
polynomial with integer coefficients.  The representation is canonical: when
``d > 0`` the numerator is never divisible by ``1 - t``.

Segre products and Veronese sections are computed by expanding enough Taylor
coefficients to pass the point where the coefficient sequence becomes
polynomial, multiplying the truncation by ``(1-t)^d`` and checking that a few
guard coefficients vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Sequence

GUARD = 3


class ZeroSeriesError(ValueError):
    """Raised when an invariant is requested for the zero series."""


class NonModuleSeriesError(ValueError):
    """Raised when a series has a negative Taylor coefficient."""


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial; ``coefficients[k]`` multiplies ``t^(low + k)``."""

    low: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        low = int(self.low)
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        if start == end:
            low, coeffs = 0, ()
        else:
            low, coeffs = low + start, coeffs[start:end]
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPolynomial:
        return cls(exponent, (coefficient,))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def high(self) -> int:
        """Highest exponent with a nonzero coefficient."""
        if self.is_zero:
            raise ZeroSeriesError("zero polynomial has no degree")
        return self.low + len(self.coefficients) - 1

    def __getitem__(self, exponent: int) -> int:
        k = exponent - self.low
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def terms(self) -> Iterator[tuple[int, int]]:
        for k, c in enumerate(self.coefficients):
            if c:
                yield self.low + k, c

    def at_one(self) -> int:
        return sum(self.coefficients)

    def shift(self, s: int) -> LaurentPolynomial:
        return LaurentPolynomial(self.low + s, self.coefficients)

    def __mul__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        if self.is_zero or other.is_zero:
            return LaurentPolynomial(0, ())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return LaurentPolynomial(self.low + other.low, tuple(out))

    def divide_one_minus_t(self) -> LaurentPolynomial:
        """Exact quotient by ``1 - t``; requires the value at 1 to vanish."""
        if self.at_one() != 0:
            raise ValueError("polynomial is not divisible by 1 - t")
        out, acc = [], 0
        for c in self.coefficients:
            acc += c
            out.append(acc)
        return LaurentPolynomial(self.low, tuple(out))


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in ``k`` (ascending rational coefficients) valid for ``k >= valid_from``."""

    coefficients: tuple[Fraction, ...]
    valid_from: int

    def __call__(self, k) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * k + c
        return value

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class HilbertSeries:
    numerator: LaurentPolynomial
    pole_order: int

    def __post_init__(self):
        if self.pole_order < 0:
            raise ValueError("pole order must be nonnegative")
        num, d = self.numerator, self.pole_order
        if num.is_zero:
            d = 0
        while d > 0 and num.at_one() == 0:
            num = num.divide_one_minus_t()
            d -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "pole_order", d)

    @classmethod
    def from_terms(cls, terms: dict[int, int], pole_order: int) -> HilbertSeries:
        if not terms:
            return cls(LaurentPolynomial(0, ()), pole_order)
        low, high = min(terms), max(terms)
        coeffs = tuple(terms.get(e, 0) for e in range(low, high + 1))
        return cls(LaurentPolynomial(low, coeffs), pole_order)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def __getitem__(self, k: int) -> int:
        return coefficient(self, k)

    def __str__(self) -> str:
        return format_series(self)


ZERO = HilbertSeries(LaurentPolynomial(0, ()), 0)


def coefficient(series: HilbertSeries, k: int) -> int:
    """Exact Taylor coefficient of ``t^k``."""
    num, d = series.numerator, series.pole_order
    if d == 0:
        return num[k]
    total = 0
    for e, c in num.terms():
        if e > k:
            break
        total += c * comb(k - e + d - 1, d - 1)
    return total


def coefficients(series: HilbertSeries, start: int, stop: int) -> list[int]:
    return [coefficient(series, k) for k in range(start, stop)]


def _reconstruct(h: Callable[[int], int], start: int, top: int, pole: int) -> HilbertSeries:
    """Numerator of ``sum_{k>=start} h(k) t^k`` times ``(1-t)^pole``, checked past ``top``."""
    values = [h(k) for k in range(start, top + GUARD + 1)]
    weights = [(-1) ** i * comb(pole, i) for i in range(pole + 1)]
    numerator = []
    for n in range(len(values)):
        acc = 0
        for i, w in enumerate(weights):
            if n - i < 0:
                break
            acc += w * values[n - i]
        numerator.append(acc)
    body, guard = numerator[: top - start + 1], numerator[top - start + 1:]
    if any(guard):
        raise ArithmeticError(
            f"numerator reconstruction did not terminate by degree {top}: guard {guard}"
        )
    return HilbertSeries(LaurentPolynomial(start, tuple(body)), pole)


def hadamard_product(a: HilbertSeries, b: HilbertSeries) -> HilbertSeries:
    """Coefficientwise product, the series of a Segre product."""
    if a.is_zero or b.is_zero:
        return ZERO
    start = max(a.numerator.low, b.numerator.low)
    h = lambda k: coefficient(a, k) * coefficient(b, k)  # noqa: E731
    if a.pole_order == 0 or b.pole_order == 0:
        stop = min(s.numerator.high for s in (a, b) if s.pole_order == 0)
        return HilbertSeries.from_terms({k: h(k) for k in range(start, stop + 1)}, 0)
    pole = a.pole_order + b.pole_order - 1
    k0 = max(a.numerator.high - a.pole_order, b.numerator.high - b.pole_order) + 1
    top = max(k0 + pole - 1, start)
    return _reconstruct(h, start, top, pole)


def veronese_section(a: HilbertSeries, c: int) -> HilbertSeries:
    """Series of ``sum_k a_{ck} t^k``."""
    if c < 1:
        raise ValueError(f"Veronese degree must be >= 1, got {c}")
    if a.is_zero:
        return ZERO
    start = _ceil_div(a.numerator.low, c)
    h = lambda k: coefficient(a, c * k)  # noqa: E731
    if a.pole_order == 0:
        stop = a.numerator.high // c
        return HilbertSeries.from_terms({k: h(k) for k in range(start, stop + 1)}, 0)
    d = a.pole_order
    k0 = _ceil_div(a.numerator.high - d + 1, c)
    top = max(k0 + d - 1, start)
    return _reconstruct(h, start, top, d)


def shift_series(a: HilbertSeries, s: int) -> HilbertSeries:
    """Multiply by ``t^s``: the grading shift with ``M(-s)_k = M_{k-s}``."""
    return HilbertSeries(a.numerator.shift(s), a.pole_order)


def a_invariant(series: HilbertSeries) -> int:
    """Degree of the series as a rational function."""
    if series.is_zero:
        raise ZeroSeriesError("a-invariant of the zero series is undefined")
    return series.numerator.high - series.pole_order


def check_nonnegative(series: HilbertSeries, extra: int = 0) -> None:
    """Scan the coefficients up to the polynomial region for negative values."""
    num, d = series.numerator, series.pole_order
    stop = max(num.high - d + 1, num.low) + d + extra
    for k in range(num.low, stop + 1):
        if coefficient(series, k) < 0:
            raise NonModuleSeriesError(f"coefficient of t^{k} is negative")
    if d > 0 and num.at_one() < 0:
        raise NonModuleSeriesError("Hilbert polynomial has negative leading coefficient")


def initial_degree(series: HilbertSeries) -> int:
    """Smallest ``k`` with a nonzero coefficient."""
    if series.is_zero:
        raise ZeroSeriesError("initial degree of the zero series is undefined")
    check_nonnegative(series)
    return series.numerator.low


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def hilbert_polynomial(series: HilbertSeries) -> HilbertPolynomial:
    """Polynomial agreeing with the coefficients from ``high - d + 1`` on."""
    d = series.pole_order
    if d == 0:
        raise ValueError("a series with pole order 0 has no Hilbert polynomial")
    total = [Fraction(0)] * d
    for e, c in series.numerator.terms():
        # binom(k - e + d - 1, d - 1) as a polynomial in k
        poly = [Fraction(1)]
        for i in range(1, d):
            poly = _poly_mul(poly, [Fraction(i - e, i), Fraction(1, i)])
        for idx, v in enumerate(poly):
            total[idx] += c * v
    return HilbertPolynomial(tuple(total), series.numerator.high - d + 1)


def multiplicity(series: HilbertSeries) -> int:
    """Numerator evaluated at ``t = 1``."""
    if series.pole_order == 0:
        raise ValueError("multiplicity requires pole order >= 1")
    return series.numerator.at_one()


def from_truncation(values: Sequence[int], low: int, pole_order: int) -> HilbertSeries:
    """Rebuild a series from coefficients ``values[k]`` of ``t^(low+k)``.

    The truncation must extend past the end of the numerator by at least
    ``GUARD`` terms; the caller is responsible for supplying enough values.
    """
    top = low + len(values) - 1 - GUARD
    return _reconstruct(lambda k: values[k - low] if k >= low else 0, low, top, pole_order)


def _term(e: int, c: int) -> str:
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        var = "t" if e == 1 else f"t^{e}"
        body = var if mag == 1 else f"{mag}{var}"
    return body


def format_polynomial(p: LaurentPolynomial) -> str:
    if p.is_zero:
        return "0"
    out = []
    for e, c in p.terms():
        sign = "-" if c < 0 else "+"
        if not out:
            out.append(("-" if c < 0 else "") + _term(e, c))
        else:
            out.append(sign + _term(e, c))
    return "".join(out)


def format_series(series: HilbertSeries) -> str:
    """Render as ``(1+t)/(1-t)^3``; single-term numerators lose the parentheses."""
    num = format_polynomial(series.numerator)
    if series.pole_order == 0:
        return num
    if len(list(series.numerator.terms())) > 1:
        num = f"({num})"
    d = series.pole_order
    den = "(1-t)" if d == 1 else f"(1-t)^{d}"
    return f"{num}/{den}"
