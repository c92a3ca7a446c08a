import itertools

import pytest

from segrecm.expr import series_of
from segrecm.families import Segre3Params, Veronese2Params
from segrecm.geometry import conic_classes_generic, presentation
from segrecm.oracle import (
    BudgetExceeded,
    conic_grid_probe,
    hilbert_coeff_brute,
    monomial_set,
    mu_lower_bound,
    serre_noncm_certificate,
)
from segrecm.series import coefficient

P222 = Segre3Params(2, 2, 2)


def test_hilbert_coeff_brute_examples():
    assert hilbert_coeff_brute(P222, (1, 2), 3) == 24
    assert hilbert_coeff_brute(Veronese2Params(2, 2, 2, 1), 0, 1) == 6
    for i, j in [(2, 0), (0, 3), (-1, 2)]:
        for k in range(-3, max(0, i, j)):
            assert hilbert_coeff_brute(P222, (i, j), k) == 0


def test_monomial_set_examples():
    s = monomial_set(P222, (0, 0), 1)
    assert len(s.exponents) == 8
    assert all(sum(v[0:2]) == sum(v[2:4]) == sum(v[4:6]) == 1 for v in s.exponents)
    assert len(monomial_set(P222, (2, 3), 3).exponents) == 8
    assert monomial_set(P222, (2, 3), 2).exponents == ()


def test_budget_enforced():
    with pytest.raises(BudgetExceeded):
        monomial_set(Segre3Params(5, 5, 5), (0, 0), 6, budget=1000)


def test_brute_matches_engine_small():
    params = Segre3Params(2, 3, 2)
    for i, j in itertools.product(range(-2, 3), repeat=2):
        s = series_of(params.module_expr((i, j)))
        for k in range(-3, 7):
            assert coefficient(s, k) == hilbert_coeff_brute(params, (i, j), k)
    v = Veronese2Params(2, 3, 2, 3)
    for i in range(-4, 5):
        s = series_of(v.module_expr(i))
        for k in range(-3, 7):
            assert coefficient(s, k) == hilbert_coeff_brute(v, i, k)


def test_mu_examples():
    for top in range(0, 5):
        assert mu_lower_bound(P222, (0, 0), top) == 1
    assert mu_lower_bound(P222, (2, 3), 3) == 8
    assert mu_lower_bound(P222, (1, 1), 1) == 2


def test_mu_monotone_in_degree():
    for label in [(2, 3), (-2, 1), (1, -1)]:
        values = [mu_lower_bound(P222, label, top) for top in range(0, 7)]
        assert values == sorted(values)


def test_serre_certificate_examples():
    cert = serre_noncm_certificate(P222, (2, 3))
    assert cert is not None and cert.mu_lower_bound >= 8 and cert.ring_multiplicity == 6
    assert serre_noncm_certificate(P222, (0, 0)) is None


def test_grid_probe():
    pres = presentation(P222)
    generic = set(conic_classes_generic(pres))
    assert (0, 0) in conic_grid_probe(pres, 1)
    q2, q4 = conic_grid_probe(pres, 2), conic_grid_probe(pres, 4)
    assert q2 <= q4 <= generic
    v = presentation(Veronese2Params(2, 2, 2, 1))
    assert conic_grid_probe(v, 3) <= set(conic_classes_generic(v))
