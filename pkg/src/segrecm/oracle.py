"""Brute-force ground truth by explicit monomial enumeration.

Nothing here uses binomial coefficients or rational-function arithmetic:
counts come from listing compositions, generator counts from set sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil

from .expr import series_of
from .families import Segre3Params, Veronese2Params
from .series import multiplicity

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All vectors of ``parts`` nonnegative integers summing to ``total``."""
    if total < 0:
        return ()
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _block_totals(params, label, k: int) -> list[tuple[int, int]]:
    """``(total, parts)`` for each coordinate block of ``M_label`` in degree ``k``."""
    if isinstance(params, Segre3Params):
        i, j = label
        return [(k, params.m), (k - i, params.n), (k - j, params.p)]
    if isinstance(params, Veronese2Params):
        b = params.bezout
        return [(params.c * k - b.v * label, params.m), (params.d * k - b.u * label, params.n)]
    raise TypeError(f"unknown parameter record {params!r}")


def hilbert_coeff_brute(params, label, k: int, budget: int = DEFAULT_BUDGET) -> int:
    count = 1
    for total, parts in _block_totals(params, label, k):
        if total < 0:
            return 0
        comps = compositions(total, parts)
        if len(comps) > budget:
            raise BudgetExceeded(f"{len(comps)} compositions exceed budget {budget}")
        count *= len(comps)
    return count


@dataclass(frozen=True)
class MonomialSet:
    degree: int
    exponents: tuple[tuple[int, ...], ...]


def monomial_set(params, label, degree: int, budget: int = DEFAULT_BUDGET) -> MonomialSet:
    blocks = []
    size = 1
    for total, parts in _block_totals(params, label, degree):
        comps = compositions(total, parts)
        size *= len(comps)
        if size > budget:
            raise BudgetExceeded(f"degree {degree} piece exceeds budget {budget}")
        blocks.append(comps)
    vectors = tuple(sorted(sum(combo, ()) for combo in itertools.product(*blocks)))
    return MonomialSet(degree, vectors)


def first_nonzero_degree(params, label, limit: int = 200) -> int:
    """Smallest degree with a nonzero piece, found by scanning."""
    start = -limit
    for k in range(start, limit):
        if hilbert_coeff_brute(params, label, k):
            return k
    raise BudgetExceeded(f"no nonzero degree in [{start}, {limit})")


def _generator_blocks(params) -> list[tuple[int, int]]:
    """``(total, parts)`` per block for the degree-1 semigroup generators."""
    if isinstance(params, Segre3Params):
        return [(1, params.m), (1, params.n), (1, params.p)]
    return [(params.c, params.m), (params.d, params.n)]


def mu_lower_bound(params, label, max_degree: int, budget: int = DEFAULT_BUDGET) -> int:
    """Count of minimal generators in degrees ``<= max_degree``.

    A monomial of ``M_d`` is a minimal generator iff it is not a degree-1
    generator plus a monomial of ``M_{d-1}``.  Both ``M_d`` and the generator
    set are products over the coordinate blocks, so the sum set is the
    product of the blockwise sum sets, each built explicitly.
    """
    gen_blocks = [compositions(t, parts) for t, parts in _generator_blocks(params)]
    start = first_nonzero_degree(params, label)
    total = 0
    for d in range(start, max_degree + 1):
        current = hilbert_coeff_brute(params, label, d, budget)
        reached = 1
        for (t, parts), gens in zip(_block_totals(params, label, d - 1), gen_blocks):
            prev = compositions(t, parts) if t >= 0 else ()
            if len(prev) * len(gens) > budget:
                raise BudgetExceeded(f"block sum set in degree {d} exceeds budget {budget}")
            reached *= len({tuple(a + b for a, b in zip(g, x)) for g in gens for x in prev})
        total += current - reached
    return total


@dataclass(frozen=True)
class SerreCertificate:
    mu_lower_bound: int
    ring_multiplicity: int
    degrees: tuple[int, int]


def serre_noncm_certificate(params, label, window: int = 6, budget: int = DEFAULT_BUDGET):
    """Proof of non-CM-ness when more generators are seen than the ring multiplicity allows."""
    start = first_nonzero_degree(params, label)
    top = start + window - 1
    mu = mu_lower_bound(params, label, top, budget)
    e = multiplicity(series_of(params.ring_expr()))
    if mu > e:
        return SerreCertificate(mu, e, (start, top))
    return None


def conic_grid_probe(pres, q: int, budget: int = DEFAULT_BUDGET) -> set[tuple[int, ...]]:
    """Classes of ``ceil(beta)`` for ``beta`` on the ``1/q`` grid of the fundamental parallelepiped."""
    from .geometry import class_group

    if q ** pres.rank > budget:
        raise BudgetExceeded(f"{q}^{pres.rank} grid points exceed budget {budget}")
    group = class_group(pres)
    b = pres.matrix()
    steps = [Fraction(t, q) for t in range(q)]
    found = set()
    for lam in itertools.product(steps, repeat=pres.rank):
        w = [ceil(sum((a * x for a, x in zip(row, lam)), Fraction(0))) for row in b]
        found.add(group.projection(w))
    return found
