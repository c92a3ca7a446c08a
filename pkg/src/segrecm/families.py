"""Parameter records for the two ring families and their module decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .expr import Expr, PolyRing, Segre, Shift, Veronese


@dataclass(frozen=True)
class Segre3Params:
    """Segre product of polynomial rings in ``m``, ``n`` and ``p`` variables."""

    m: int
    n: int
    p: int

    tag = "segre3"

    def __post_init__(self):
        if min(self.m, self.n, self.p) < 2:
            raise ValueError(f"segre3 needs m, n, p >= 2, got {self.m}, {self.n}, {self.p}")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.m, self.n, self.p)

    def ring_expr(self) -> Expr:
        return Segre(Segre(PolyRing(self.m), PolyRing(self.n)), PolyRing(self.p))

    def module_expr(self, label: tuple[int, int]) -> Expr:
        """``M_(i,j) = R1 # R2(-i) # R3(-j)``."""
        i, j = label
        return Segre(Segre(PolyRing(self.m), Shift(PolyRing(self.n), i)), Shift(PolyRing(self.p), j))

    def window(self) -> int:
        return self.m + self.n + self.p


@dataclass(frozen=True)
class BezoutPair:
    u: int
    v: int


def bezout_pair(c: int, d: int) -> BezoutPair:
    """Smallest ``v >= 1`` with ``c | 1 + d v``; then ``c u - d v = 1``."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    if gcd(c, d) != 1:
        raise ValueError(f"gcd({c}, {d}) != 1")
    v = 1
    while (1 + d * v) % c:
        v += 1
    return BezoutPair((1 + d * v) // c, v)


@dataclass(frozen=True)
class Veronese2Params:
    """Segre product of the ``c``-th Veronese of ``K[X_1..X_m]`` and the ``d``-th of ``K[Y_1..Y_n]``."""

    m: int
    n: int
    c: int
    d: int

    tag = "veronese2"

    def __post_init__(self):
        if min(self.m, self.n, self.c, self.d) < 1:
            raise ValueError("veronese2 needs m, n, c, d >= 1")
        if gcd(self.c, self.d) != 1:
            raise ValueError(f"veronese2 needs gcd(c, d) = 1, got c={self.c}, d={self.d}")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.m, self.n, self.c, self.d)

    @property
    def bezout(self) -> BezoutPair:
        return bezout_pair(self.c, self.d)

    def ring_expr(self) -> Expr:
        return Segre(Veronese(PolyRing(self.m), self.c), Veronese(PolyRing(self.n), self.d))

    def factor_exprs(self, i: int, bezout: BezoutPair | None = None) -> tuple[Expr, Expr]:
        """``R1(-v i)^(c)`` and ``R2(-u i)^(d)``."""
        b = bezout or self.bezout
        return (
            Veronese(Shift(PolyRing(self.m), b.v * i), self.c),
            Veronese(Shift(PolyRing(self.n), b.u * i), self.d),
        )

    def module_expr(self, i: int) -> Expr:
        return Segre(*self.factor_exprs(i))

    def window(self) -> tuple[int, int]:
        """Range outside which neither ceiling inequality can hold."""
        cd = self.c * self.d
        return (-self.d * self.m - cd, self.c * self.n + cd)


def make_params(tag: str, values) -> Segre3Params | Veronese2Params:
    if tag == "segre3":
        return Segre3Params(*values)
    if tag == "veronese2":
        return Veronese2Params(*values)
    raise ValueError(f"unknown family {tag!r}")
