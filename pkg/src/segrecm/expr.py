"""Graded module expressions over polynomial rings, shifts, Veronese sections and Segre products.

Textual grammar (whitespace-insensitive)::

    expr := poly(<int>) | shift(<expr>, <int>) | veronese(<expr>, <int>) | segre(<expr>, <expr>)

``shift(E, s)`` is ``E(-s)``: its degree ``k`` piece is the degree ``k - s`` piece of ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .series import HilbertSeries, LaurentPolynomial, hadamard_product, shift_series, veronese_section


@dataclass(frozen=True)
class PolyRing:
    vars: int

    def __post_init__(self):
        if self.vars < 1:
            raise ValueError(f"polynomial ring needs at least one variable, got {self.vars}")


@dataclass(frozen=True)
class Shift:
    child: "Expr"
    s: int


@dataclass(frozen=True)
class Veronese:
    child: "Expr"
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"Veronese degree must be >= 1, got {self.c}")


@dataclass(frozen=True)
class Segre:
    left: "Expr"
    right: "Expr"


Expr = Union[PolyRing, Shift, Veronese, Segre]


def krull_dim(expr: Expr) -> int:
    if isinstance(expr, PolyRing):
        return expr.vars
    if isinstance(expr, (Shift, Veronese)):
        return krull_dim(expr.child)
    if isinstance(expr, Segre):
        return krull_dim(expr.left) + krull_dim(expr.right) - 1
    raise TypeError(f"not a module expression: {expr!r}")


@lru_cache(maxsize=None)
def series_of(expr: Expr) -> HilbertSeries:
    """Hilbert series of the module described by ``expr``."""
    if isinstance(expr, PolyRing):
        return HilbertSeries(LaurentPolynomial(0, (1,)), expr.vars)
    if isinstance(expr, Shift):
        return shift_series(series_of(expr.child), expr.s)
    if isinstance(expr, Veronese):
        return veronese_section(series_of(expr.child), expr.c)
    if isinstance(expr, Segre):
        return hadamard_product(series_of(expr.left), series_of(expr.right))
    raise TypeError(f"not a module expression: {expr!r}")


def to_text(expr: Expr) -> str:
    if isinstance(expr, PolyRing):
        return f"poly({expr.vars})"
    if isinstance(expr, Shift):
        return f"shift({to_text(expr.child)}, {expr.s})"
    if isinstance(expr, Veronese):
        return f"veronese({to_text(expr.child)}, {expr.c})"
    if isinstance(expr, Segre):
        return f"segre({to_text(expr.left)}, {to_text(expr.right)})"
    raise TypeError(f"not a module expression: {expr!r}")


class ParseError(ValueError):
    """Syntax error; ``position`` is 1-based."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        if self.pos >= len(self.text):
            # end of input is reported at the last character
            raise ParseError(f"{message}, found end of input", max(len(self.text.rstrip()), 1))
        raise ParseError(f"{message}, found {self.text[self.pos]!r}", self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if self.text.startswith(ch, self.pos):
            self.pos += 1
        else:
            self.error(f"expected {ch!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        word = self.text[start:self.pos]
        if word not in ("poly", "shift", "veronese", "segre"):
            self.pos = start
            self.error("expected one of poly, shift, veronese, segre")
        return word

    def expr(self) -> Expr:
        word = self.name()
        self.expect("(")
        if word == "poly":
            arg_pos = self.pos
            n = self.integer()
            if n < 1:
                self.pos = arg_pos
                self.skip()
                self.error("poly needs a positive variable count")
            self.expect(")")
            return PolyRing(n)
        if word == "segre":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Segre(left, right)
        child = self.expr()
        self.expect(",")
        arg_pos = self.pos
        n = self.integer()
        self.expect(")")
        if word == "shift":
            return Shift(child, n)
        if n < 1:
            self.pos = arg_pos
            self.skip()
            self.error("veronese needs a positive degree")
        return Veronese(child, n)


def parse_expr(text: str) -> Expr:
    parser = _Parser(text)
    result = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        parser.error("unexpected trailing input")
    return result
