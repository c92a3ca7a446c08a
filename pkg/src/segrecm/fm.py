"""Fourier-Motzkin elimination over the rationals with strict/weak tracking.

A constraint ``coeffs . x < bound`` (strict) or ``coeffs . x <= bound`` (weak).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    bound: Fraction
    strict: bool

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((a * x for a, x in zip(self.coeffs, point)), Fraction(0))
        return lhs < self.bound if self.strict else lhs <= self.bound


def _frac(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in values)


def le(coeffs, bound) -> Constraint:
    return Constraint(_frac(coeffs), Fraction(bound), False)


def lt(coeffs, bound) -> Constraint:
    return Constraint(_frac(coeffs), Fraction(bound), True)


def ge(coeffs, bound) -> Constraint:
    return le([-Fraction(a) for a in coeffs], -Fraction(bound))


def gt(coeffs, bound) -> Constraint:
    return lt([-Fraction(a) for a in coeffs], -Fraction(bound))


def _normalize(c: Constraint) -> Constraint:
    scale = next((abs(a) for a in c.coeffs if a), None)
    if scale is None or scale == 1:
        return c
    return Constraint(tuple(a / scale for a in c.coeffs), c.bound / scale, c.strict)


def _tighter(a: Constraint, b: Constraint) -> Constraint:
    if a.bound != b.bound:
        return a if a.bound < b.bound else b
    return a if a.strict else b


def _prune(constraints: Iterable[Constraint]) -> list[Constraint] | None:
    """Normalize, drop trivial rows and keep the tightest row per direction; None if contradictory."""
    best: dict[tuple[Fraction, ...], Constraint] = {}
    for c in constraints:
        if not any(c.coeffs):
            if c.bound < 0 or (c.bound == 0 and c.strict):
                return None
            continue
        c = _normalize(c)
        prev = best.get(c.coeffs)
        best[c.coeffs] = c if prev is None else _tighter(prev, c)
    return list(best.values())


def _combine(pos: Constraint, neg: Constraint, k: int) -> Constraint:
    fp, fn = 1 / pos.coeffs[k], 1 / -neg.coeffs[k]
    coeffs = tuple(a * fp + b * fn for a, b in zip(pos.coeffs, neg.coeffs))
    coeffs = coeffs[:k] + (Fraction(0),) + coeffs[k + 1:]
    return Constraint(coeffs, pos.bound * fp + neg.bound * fn, pos.strict or neg.strict)


def _eliminate(constraints: list[Constraint], nvars: int):
    """Yield elimination steps ``(var, involved constraints)``; final list is constant-only."""
    remaining = set(range(nvars))
    history = []
    current = _prune(constraints)
    while current is not None and remaining:
        def cost(k):
            p = sum(1 for c in current if c.coeffs[k] > 0)
            n = sum(1 for c in current if c.coeffs[k] < 0)
            return p * n - p - n, k

        k = min(remaining, key=cost)
        remaining.discard(k)
        pos = [c for c in current if c.coeffs[k] > 0]
        neg = [c for c in current if c.coeffs[k] < 0]
        rest = [c for c in current if c.coeffs[k] == 0]
        history.append((k, pos, neg))
        current = _prune(rest + [_combine(p, n, k) for p in pos for n in neg])
    return current, history


def _nvars(constraints: Sequence[Constraint], nvars: int | None) -> int:
    if nvars is not None:
        return nvars
    return max((len(c.coeffs) for c in constraints), default=0)


def _pad(constraints: Sequence[Constraint], nvars: int) -> list[Constraint]:
    out = []
    for c in constraints:
        if len(c.coeffs) > nvars:
            raise ValueError("constraint has more coefficients than variables")
        pad = (Fraction(0),) * (nvars - len(c.coeffs))
        out.append(Constraint(c.coeffs + pad, c.bound, c.strict))
    return out


def fourier_motzkin_feasible(constraints: Sequence[Constraint], nvars: int | None = None) -> bool:
    """True iff the system has a rational solution."""
    n = _nvars(constraints, nvars)
    final, _ = _eliminate(_pad(constraints, n), n)
    return final is not None


def fourier_motzkin_solve(constraints: Sequence[Constraint], nvars: int | None = None) -> list[Fraction] | None:
    """A rational solution found by back-substitution, or None if infeasible."""
    n = _nvars(constraints, nvars)
    system = _pad(constraints, n)
    final, history = _eliminate(system, n)
    if final is None:
        return None
    point = [Fraction(0)] * n
    for k, pos, neg in reversed(history):
        lo = hi = None
        lo_strict = hi_strict = False
        for c in neg:
            rest = sum((a * x for i, (a, x) in enumerate(zip(c.coeffs, point)) if i != k), Fraction(0))
            val = (c.bound - rest) / c.coeffs[k]
            if lo is None or val > lo or (val == lo and c.strict):
                lo, lo_strict = val, c.strict
        for c in pos:
            rest = sum((a * x for i, (a, x) in enumerate(zip(c.coeffs, point)) if i != k), Fraction(0))
            val = (c.bound - rest) / c.coeffs[k]
            if hi is None or val < hi or (val == hi and c.strict):
                hi, hi_strict = val, c.strict
        if lo is not None and hi is not None:
            point[k] = lo if lo == hi else (lo + hi) / 2
        elif lo is not None:
            point[k] = lo + 1 if lo_strict else lo
        elif hi is not None:
            point[k] = hi - 1 if hi_strict else hi
    if not all(c.holds(point) for c in system):
        raise ArithmeticError("back-substitution produced a point violating the system")
    return point
