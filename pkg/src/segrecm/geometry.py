"""Divisor class groups and conic classes of the two semigroup families.

Both semigroups sit in ``Z^s`` with the coordinate functionals as support
forms, so ``gp(S)`` is a sublattice of ``Z^s`` and ``Cl(R) = Z^s / gp(S)``.
A conic ideal with ceiling vector ``w`` (``w_k = ceil(sigma_k(beta))``) has
class ``projection(w)``; the module ``M_label`` has class ``projection(-z0)``
for any exponent vector ``z0`` in its defining coset.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil
from typing import Sequence

from .fm import Constraint, fourier_motzkin_feasible, fourier_motzkin_solve, gt, le
from .families import Segre3Params, Veronese2Params
from .snf import Matrix, inverse_unimodular, smith_normal_form, transpose


class RedundantPresentationWarning(UserWarning):
    """The coordinate support forms do not form an irredundant presentation."""


class CrossCheckError(RuntimeError):
    pass


def _unit(s: int, k: int, scale: int = 1) -> list[int]:
    v = [0] * s
    v[k] = scale
    return v


@dataclass(frozen=True)
class SupportPresentation:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]  # columns, each of length ambient_rank
    family: str
    params: tuple[int, ...]
    blocks: tuple[int, ...]  # sizes of the coordinate blocks (alpha, beta[, gamma])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """``s x rank`` integer matrix whose columns are the basis."""
        return transpose([list(col) for col in self.basis])

    def block_starts(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.blocks[:-1]))

    def to_text(self) -> str:
        lines = [f"{self.ambient_rank} {self.rank}"]
        lines += [" ".join(str(x) for x in col) for col in self.basis]
        return "\n".join(lines) + "\n"


def parse_presentation_text(text: str) -> tuple[int, list[list[int]]]:
    """Read the ``s rank`` + columns format back into ``(s, columns)``."""
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    s, rank = int(rows[0][0]), int(rows[0][1])
    cols = [[int(x) for x in row] for row in rows[1:]]
    if len(cols) != rank or any(len(c) != s for c in cols):
        raise ValueError("malformed presentation text")
    return s, cols


def presentation(params: Segre3Params | Veronese2Params) -> SupportPresentation:
    if isinstance(params, Segre3Params):
        blocks = (params.m, params.n, params.p)
        s = sum(blocks)
        starts = [0, params.m, params.m + params.n]
        diag = [0] * s
        for st in starts:
            diag[st] = 1
        cols = [diag]
    elif isinstance(params, Veronese2Params):
        blocks = (params.m, params.n)
        s = sum(blocks)
        starts = [0, params.m]
        gen = [0] * s
        gen[0], gen[params.m] = params.c, params.d
        cols = [gen]
        if params.m == 1 or params.n == 1:
            warnings.warn(
                f"veronese2 {params.as_tuple()}: a one-variable factor makes its coordinate form "
                "redundant; class data is computed for the literal presentation",
                RedundantPresentationWarning,
                stacklevel=2,
            )
    else:
        raise TypeError(f"unknown parameter record {params!r}")
    for st, size in zip(starts, blocks):
        for k in range(1, size):
            v = [0] * s
            v[st + k], v[st] = 1, -1
            cols.append(v)
    return SupportPresentation(s, tuple(tuple(c) for c in cols), params.tag, params.as_tuple(), blocks)


def defining_forms(pres: SupportPresentation) -> list[list[int]]:
    """Integer forms whose common kernel is ``gp(S)``; evaluated on ``z0`` they give the label."""
    s = pres.ambient_rank
    starts = pres.block_starts()

    def block_sum(b, weight):
        row = [0] * s
        for k in range(starts[b], starts[b] + pres.blocks[b]):
            row[k] = weight
        return row

    if pres.family == "segre3":
        a, b, g = block_sum(0, 1), block_sum(1, 1), block_sum(2, 1)
        return [[x - y for x, y in zip(a, b)], [x - y for x, y in zip(a, g)]]
    if pres.family == "veronese2":
        _, _, c, d = pres.params
        return [[x - y for x, y in zip(block_sum(0, d), block_sum(1, c))]]
    raise ValueError(f"unknown family {pres.family!r}")


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]  # U with U B V = D
    diagonal: tuple[int, ...]  # nonzero invariant factors of B, in order

    def projection(self, x: Sequence[int]) -> tuple[int, ...]:
        ux = [sum(a * b for a, b in zip(row, x)) for row in self.transform]
        r = len(self.diagonal)
        free = tuple(ux[r:])
        tors = tuple(ux[k] % d for k, d in enumerate(self.diagonal) if d > 1)
        return free + tors

    def lift(self, cls: Sequence[int]) -> list[int]:
        """An integer vector whose projection is ``cls``."""
        free, tors = list(cls[: self.free_rank]), list(cls[self.free_rank:])
        xprime = []
        it = iter(tors)
        for d in self.diagonal:
            xprime.append(next(it) if d > 1 else 0)
        xprime += free
        return [sum(a * b for a, b in zip(row, xprime)) for row in self.inverse_transform]

    @cached_property
    def inverse_transform(self) -> Matrix:
        return inverse_unimodular([list(row) for row in self.transform])


def class_group(pres: SupportPresentation) -> ClassGroup:
    u, d, _ = smith_normal_form(pres.matrix())
    diag = tuple(d[k][k] for k in range(min(len(d), len(d[0]))) if d[k][k])
    free = pres.ambient_rank - len(diag)
    return ClassGroup(free, tuple(x for x in diag if x > 1), tuple(tuple(r) for r in u), diag)


@dataclass(frozen=True)
class ConicWitness:
    ceil_vector: tuple[int, ...]
    class_tuple: tuple[int, ...]
    box: tuple[tuple[int, int], ...]  # (strict lower, weak upper) per coordinate
    point: tuple[Fraction, ...]  # a point of span(basis) inside the box

    def to_record(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "class": list(self.class_tuple),
            "ceil_vector": list(self.ceil_vector),
            "box": [{"lower": q(Fraction(lo)), "lower_strict": True, "upper": q(Fraction(hi)), "upper_strict": False}
                    for lo, hi in self.box],
            "point": [q(x) for x in self.point],
        }


def box_constraints(pres: SupportPresentation, w: Sequence[int]) -> list[Constraint]:
    """``w_k - 1 < (B lambda)_k <= w_k`` in the coefficients ``lambda`` of the basis."""
    b = pres.matrix()
    out = []
    for k, row in enumerate(b):
        out.append(le(row, w[k]))
        out.append(gt(row, w[k] - 1))
    return out


def verify_witness(pres: SupportPresentation, witness: ConicWitness) -> bool:
    """Re-check a witness: the box meets the span, and the stored point sits in both."""
    if not fourier_motzkin_feasible(box_constraints(pres, witness.ceil_vector), pres.rank):
        return False
    y = witness.point
    inside = all(lo < yk <= hi for (lo, hi), yk in zip(witness.box, y))
    in_span = all(sum(f * yk for f, yk in zip(form, y)) == 0 for form in defining_forms(pres))
    return inside and in_span and all(ceil(yk) == wk for yk, wk in zip(y, witness.ceil_vector))


def _class_box(pres: SupportPresentation, group: ClassGroup, offset: Sequence[int]):
    """Bounding box of ``projection(ceil(B lambda))`` for ``lambda`` in ``offset + [0,1)^rank``."""
    b = pres.matrix()
    lo_w, hi_w = [], []
    for row in b:
        shift = sum(a * o for a, o in zip(row, offset))
        # integer endpoints, so the ceiling stays inside [lo, hi]
        lo_w.append(sum(min(0, a) for a in row) + shift)
        hi_w.append(sum(max(0, a) for a in row) + shift)
    r = len(group.diagonal)
    ranges = []
    for row in group.transform[r:]:
        lo = sum(a * (lo_w[k] if a > 0 else hi_w[k]) for k, a in enumerate(row))
        hi = sum(a * (hi_w[k] if a > 0 else lo_w[k]) for k, a in enumerate(row))
        ranges.append(range(lo, hi + 1))
    ranges += [range(d) for d in group.torsion]
    return ranges


def conic_classes_generic(
    pres: SupportPresentation, offset: Sequence[int] | None = None
) -> dict[tuple[int, ...], ConicWitness]:
    """Every conic class with a witness, keyed by class tuple in sorted order.

    Conic-ness of a class does not depend on the representative: translating
    the box by a lattice vector translates the span onto itself.  So each
    candidate class from the bounding box is decided by one feasibility test.
    """
    group = class_group(pres)
    offset = list(offset) if offset is not None else [0] * pres.rank
    found = {}
    for cls in itertools.product(*_class_box(pres, group, offset)):
        w = group.lift(cls)
        lam = fourier_motzkin_solve(box_constraints(pres, w), pres.rank)
        if lam is None:
            continue
        b = pres.matrix()
        y = tuple(sum((Fraction(a) * x for a, x in zip(row, lam)), Fraction(0)) for row in b)
        found[tuple(cls)] = ConicWitness(tuple(w), tuple(cls), tuple((wk - 1, wk) for wk in w), y)
    return dict(sorted(found.items()))


def _z0(pres: SupportPresentation, label) -> list[int]:
    """An integer exponent vector in the coset defining ``M_label``."""
    s = pres.ambient_rank
    starts = pres.block_starts()
    z = [0] * s
    if pres.family == "segre3":
        i, j = label
        z[starts[1]] = -i
        z[starts[2]] = -j
        return z
    if pres.family == "veronese2":
        params = Veronese2Params(*pres.params)
        b = params.bezout
        z[starts[0]] = -b.v * label
        z[starts[1]] = -b.u * label
        return z
    raise ValueError(f"unknown family {pres.family!r}")


def label_of_vector(pres: SupportPresentation, x: Sequence[int]) -> tuple[int, ...] | int:
    """Label of the coset ``x + gp(S)``, read off the defining forms."""
    vals = tuple(sum(f * xk for f, xk in zip(form, x)) for form in defining_forms(pres))
    return vals if pres.family == "segre3" else vals[0]


def class_of_label(pres: SupportPresentation, label, group: ClassGroup | None = None) -> tuple[int, ...]:
    group = group or class_group(pres)
    z0 = _z0(pres, label)
    if label_of_vector(pres, z0) != (tuple(label) if pres.family == "segre3" else label):
        raise CrossCheckError(f"representative {z0} is not in the coset of {label}")
    return group.projection([-x for x in z0])


class LabelBridge:
    """Inverse of :func:`class_of_label`, audited once against the defining forms."""

    def __init__(self, pres: SupportPresentation):
        self.pres = pres
        self.group = class_group(pres)
        if self.group.torsion:
            raise ValueError("label bridge expects a torsion-free class group")
        dim = 2 if pres.family == "segre3" else 1
        units = [tuple(int(a == b) for b in range(dim)) for a in range(dim)]
        cols = [class_of_label(pres, u if dim == 2 else u[0], self.group) for u in units]
        mat = transpose([list(c) for c in cols])
        self.inverse = inverse_unimodular(mat)
        self._audit()

    def label(self, cls: Sequence[int]):
        vals = tuple(sum(a * b for a, b in zip(row, cls)) for row in self.inverse)
        return vals if self.pres.family == "segre3" else vals[0]

    def label_of_ceiling(self, w: Sequence[int]):
        return self.label(self.group.projection(w))

    def _audit(self):
        s = self.pres.ambient_rank
        probes = [[0] * s] + [_unit(s, k) for k in range(s)] + [_unit(s, k, -2) for k in range(s)]
        for w in probes:
            direct = label_of_vector(self.pres, [-x for x in w])
            if self.label_of_ceiling(w) != direct:
                raise CrossCheckError(f"orientation audit failed at ceiling vector {w}")


def conic_predicate_segre3(params: Segre3Params, i: int, j: int) -> bool:
    m, n, p = params.as_tuple()
    return max(0, -i, -j) < min(m, n - i, p - j)


def _interval(coeffs, lo, hi) -> list[Constraint]:
    """``lo < coeffs.x <= hi``; an empty range ``(0, 0]`` is read as ``{0}``."""
    if lo == hi:
        return [le(coeffs, hi), le([-a for a in coeffs], -lo)]
    return [gt(coeffs, lo), le(coeffs, hi)]


def segre3_parameterization(params: Segre3Params) -> list[tuple[int, int]]:
    """Labels ``(ceil(a-b), ceil(a-c))`` over the box for ``(a, b, c)``, decided by elimination."""
    m, n, p = params.as_tuple()
    box = _interval([1, 0, 0], -m, 0) + _interval([0, 1, 0], -(n - 1), 0) + _interval([0, 0, 1], -(p - 1), 0)
    out = []
    for i in range(-m, n + 1):
        for j in range(-m, p + 1):
            cons = box + [gt([1, -1, 0], i - 1), le([1, -1, 0], i), gt([1, 0, -1], j - 1), le([1, 0, -1], j)]
            if fourier_motzkin_feasible(cons, 3):
                out.append((i, j))
    return out


def veronese2_parameterization(params: Veronese2Params) -> list[int]:
    """Labels of ``(ceil(ca-b), ceil(da-b'))`` read as the ceiling vector ``i e_x1 + j e_y1``."""
    m, n, c, d = params.as_tuple()
    box = _interval([1, 0, 0], -1, 0) + _interval([0, 1, 0], -(m - 1), 0) + _interval([0, 0, 1], -(n - 1), 0)
    labels = set()
    for i in range(-c, m + 1):
        for j in range(-d, n + 1):
            cons = box + [gt([c, -1, 0], i - 1), le([c, -1, 0], i), gt([d, 0, -1], j - 1), le([d, 0, -1], j)]
            if fourier_motzkin_feasible(cons, 3):
                labels.add(c * j - d * i)
    return sorted(labels)


def conic_set_segre3(params: Segre3Params, cross_check: bool = True) -> list[tuple[int, int]]:
    """Conic labels from the closed predicate, checked against two independent routes."""
    w = params.window()
    closed = [(i, j) for i in range(-w, w + 1) for j in range(-w, w + 1) if conic_predicate_segre3(params, i, j)]
    if cross_check:
        param = segre3_parameterization(params)
        pres = presentation(params)
        bridge = LabelBridge(pres)
        generic = sorted(bridge.label(cls) for cls in conic_classes_generic(pres))
        if not (closed == param == generic):
            raise CrossCheckError(
                f"conic sets disagree for {params.as_tuple()}: closed={closed} param={param} generic={generic}"
            )
    return closed


@dataclass(frozen=True)
class Veronese2Conic:
    params: tuple[int, int, int, int]
    generic: tuple[int, ...]  # ground truth
    parameterization: tuple[int, ...]
    interval: tuple[int, ...]
    formula: int

    @property
    def discrepancies(self) -> list[str]:
        out = []
        if self.parameterization != self.generic:
            out.append("parameterization differs from enumeration")
        if self.interval != self.generic:
            out.append("interval -dm < k < cn differs from enumeration")
        if self.formula != len(self.generic):
            out.append(f"formula m+n+c+d-3 = {self.formula} but enumeration finds {len(self.generic)}")
        return out


def conic_set_veronese2(params: Veronese2Params) -> Veronese2Conic:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RedundantPresentationWarning)
        pres = presentation(params)
    bridge = LabelBridge(pres)
    generic = tuple(sorted(bridge.label(cls) for cls in conic_classes_generic(pres)))
    m, n, c, d = params.as_tuple()
    interval = tuple(range(-d * m + 1, c * n))
    return Veronese2Conic(params.as_tuple(), generic, tuple(veronese2_parameterization(params)),
                          interval, m + n + c + d - 3)
