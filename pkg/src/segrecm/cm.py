"""Cohen-Macaulay decisions for Segre products via the Stueckrad-Vogel criterion.

``M1 # M2`` is CM iff ``a(M1) + 1 <= r(M2)`` and ``a(M2) + 1 <= r(M1)``, provided
both factors are CM of Krull dimension at least 2.  Factor CM-ness comes from
the built-in facts: polynomial rings and their shifts and Veronese sections
are CM, and ``R1 # R2(-i)`` is CM iff ``-(m-1) <= i <= n-1``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from .expr import Expr, PolyRing, Segre, Shift, Veronese, krull_dim, series_of
from .families import BezoutPair, Segre3Params, Veronese2Params
from .series import a_invariant, initial_degree


class UndecidableError(ValueError):
    """Expression outside the grammar the built-in criteria can decide."""


class InconsistencyError(RuntimeError):
    """Two independent routes disagree; always an implementation bug."""


class Verdict(str, Enum):
    CM = "CM"
    NOT_CM = "NotCM"
    INAPPLICABLE = "Inapplicable"


def _strip_shifts(expr: Expr) -> tuple[Expr, int]:
    total = 0
    while isinstance(expr, Shift):
        total += expr.s
        expr = expr.child
    return expr, total


def bruns_guerrieri(m: int, n: int, i: int) -> bool:
    """Whether ``K[X_1..X_m] # K[Y_1..Y_n](-i)`` is Cohen-Macaulay."""
    return -(m - 1) <= i <= n - 1


def is_cm_expr(expr: Expr) -> bool:
    base, _ = _strip_shifts(expr)
    if isinstance(base, PolyRing):
        return True
    if isinstance(base, Veronese):
        inner, _ = _strip_shifts(base.child)
        if isinstance(inner, PolyRing):
            return True
    if isinstance(base, Segre):
        left, s1 = _strip_shifts(base.left)
        right, s2 = _strip_shifts(base.right)
        if isinstance(left, PolyRing) and isinstance(right, PolyRing):
            return bruns_guerrieri(left.vars, right.vars, s2 - s1)
    raise UndecidableError(f"undecidable by built-in criteria: {expr!r}")


@dataclass(frozen=True)
class SVEvaluation:
    a1: int
    r1: int
    a2: int
    r2: int
    dim1: int
    dim2: int
    factor1_cm: bool
    factor2_cm: bool
    applicable: bool
    ineq1: bool
    ineq2: bool
    verdict: Verdict

    @classmethod
    def build(cls, a1, r1, a2, r2, dim1, dim2, factor1_cm, factor2_cm) -> SVEvaluation:
        applicable = factor1_cm and factor2_cm and dim1 >= 2 and dim2 >= 2
        ineq1 = a1 + 1 <= r2
        ineq2 = a2 + 1 <= r1
        if not applicable:
            verdict = Verdict.INAPPLICABLE
        elif ineq1 and ineq2:
            verdict = Verdict.CM
        else:
            verdict = Verdict.NOT_CM
        return cls(a1, r1, a2, r2, dim1, dim2, factor1_cm, factor2_cm, applicable, ineq1, ineq2, verdict)

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["verdict"] = self.verdict.value
        return rec


def sv_test(m1: Expr, m2: Expr) -> SVEvaluation:
    s1, s2 = series_of(m1), series_of(m2)
    return SVEvaluation.build(
        a_invariant(s1), initial_degree(s1), a_invariant(s2), initial_degree(s2),
        krull_dim(m1), krull_dim(m2), is_cm_expr(m1), is_cm_expr(m2),
    )


@dataclass(frozen=True)
class CMDecision:
    is_cm: bool
    certificates: tuple[tuple[str, SVEvaluation], ...]
    consistent: bool
    # set when the verdict comes from the closed-form inequalities alone
    formula_level: bool = False

    def deciding_certificate(self) -> tuple[str, SVEvaluation] | None:
        applicable = [c for c in self.certificates if c[1].applicable]
        for label, ev in applicable:
            if ev.verdict is Verdict.CM:
                return label, ev
        if applicable:
            return applicable[0]
        return self.certificates[0] if self.certificates else None


def _decide(certificates: list[tuple[str, SVEvaluation]], context: str) -> CMDecision:
    verdicts = {ev.verdict for _, ev in certificates if ev.applicable}
    consistent = len(verdicts) <= 1
    if not consistent:
        raise InconsistencyError(f"pairings disagree for {context}: {certificates}")
    return CMDecision(Verdict.CM in verdicts, tuple(certificates), consistent)


SEGRE3_PAIRINGS = ("A", "B", "C")


def segre3_pairings(params: Segre3Params, i: int, j: int) -> list[tuple[str, Expr, Expr]]:
    m, n, p = PolyRing(params.m), PolyRing(params.n), PolyRing(params.p)
    return [
        ("A", Segre(m, Shift(n, i)), Shift(p, j)),
        ("B", Segre(m, Shift(p, j)), Shift(n, i)),
        ("C", m, Shift(Segre(n, Shift(p, j - i)), i)),
    ]


def classify_segre3(params: Segre3Params, i: int, j: int) -> CMDecision:
    """CM iff some applicable pairing certifies CM; applicable pairings must agree."""
    certs = [(label, sv_test(m1, m2)) for label, m1, m2 in segre3_pairings(params, i, j)]
    return _decide(certs, f"segre3 {params.as_tuple()} class {(i, j)}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def veronese2_closed_form(params: Veronese2Params, i: int, bezout: BezoutPair | None = None) -> SVEvaluation:
    """The two ceiling inequalities, packaged with the a/r values they compare."""
    b = bezout or params.bezout
    m, n, c, d = params.as_tuple()
    a1 = -_ceil_div(m - b.v * i, c)
    r1 = _ceil_div(b.v * i, c)
    a2 = -_ceil_div(n - b.u * i, d)
    r2 = _ceil_div(b.u * i, d)
    return SVEvaluation.build(a1, r1, a2, r2, m, n, True, True)


def classify_veronese2(params: Veronese2Params, i: int, bezout: BezoutPair | None = None) -> CMDecision:
    closed = veronese2_closed_form(params, i, bezout)
    holds = closed.ineq1 and closed.ineq2
    certs = [("closed-form", closed)]
    if params.m >= 2 and params.n >= 2:
        engine = sv_test(*params.factor_exprs(i, bezout))
        certs.append(("engine", engine))
        if engine != closed:
            raise InconsistencyError(
                f"closed form and series engine disagree for veronese2 {params.as_tuple()} i={i}: "
                f"{closed} vs {engine}"
            )
        return _decide(certs, f"veronese2 {params.as_tuple()} i={i}")
    return CMDecision(holds, tuple(certs), True, formula_level=True)


class WindowError(RuntimeError):
    pass


def cm_region_segre3(params: Segre3Params) -> list[tuple[int, int]]:
    """All CM labels, in lexicographic order."""
    w = params.window()
    region = [
        (i, j)
        for i in range(-w, w + 1)
        for j in range(-w, w + 1)
        if classify_segre3(params, i, j).is_cm
    ]
    if any(abs(i) == w or abs(j) == w for i, j in region):
        raise WindowError(f"CM class on the window boundary for {params.as_tuple()}")
    return region


def cm_set_veronese2(params: Veronese2Params) -> list[int]:
    lo, hi = params.window()
    return [i for i in range(lo, hi + 1) if classify_veronese2(params, i).is_cm]


def segre3_case(i: int, j: int) -> int:
    """Index 1..6 of the proof case containing the label; the six cases partition Z^2."""
    if i >= 0:
        if j >= i:
            return 1
        if j >= 0:
            return 2
        return 3
    if j <= i:
        return 4
    if j <= 0:
        return 5
    return 6


@dataclass(frozen=True)
class Segre3Formulas:
    cm: int
    conic: int
    cases: tuple[int, int, int, int, int, int]


@dataclass(frozen=True)
class Veronese2Formulas:
    conic: int
    cm_lower_bound: int


def count_formulas(params):
    if isinstance(params, Segre3Params):
        m, n, p = params.as_tuple()
        cm = (m * m + n * n + p * p) + (m * n + m * p + n * p) - 2 * (m + n + p) + 1
        conic = (m * n + m * p + n * p) - (m + n + p) + 1
        cases = (
            p * n + (p - n) * (p - n + 1) // 2,
            p * (n - 1),
            n * (m - 1) + (n - m) * (n - m + 1) // 2,
            n * (m - 1),
            m * (p - 1),
            (m - 1) * (p - 1) + (p - m - 1) * (p - m) // 2,
        )
        return Segre3Formulas(cm, conic, cases)
    if isinstance(params, Veronese2Params):
        m, n, c, d = params.as_tuple()
        return Veronese2Formulas(m + n + c + d - 3, d * m + c * n - 1)
    raise TypeError(f"unknown parameter record {params!r}")


@dataclass(frozen=True)
class CaseTally:
    case: int
    computed: int
    quoted: int

    @property
    def agrees(self) -> bool:
        return self.computed == self.quoted


def segre3_case_tallies(params: Segre3Params, region=None) -> list[CaseTally]:
    region = cm_region_segre3(params) if region is None else region
    counts = [0] * 6
    for i, j in region:
        counts[segre3_case(i, j) - 1] += 1
    quoted = count_formulas(params).cases
    return [CaseTally(k + 1, counts[k], quoted[k]) for k in range(6)]
