"""Acceptance criteria, each checked at its stated tolerance (all exact).

Every test prints one ``PASS``/``FAIL`` line; the lines are also repeated in
the pytest terminal summary.  Run this file directly to see only the lines.
"""

import itertools
import subprocess
import sys
import time
import warnings
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES
from segrecm.cm import Verdict, cm_region_segre3, cm_set_veronese2, sv_test
from segrecm.expr import PolyRing, Segre, Shift, series_of
from segrecm.families import Segre3Params, Veronese2Params
from segrecm.geometry import (
    LabelBridge,
    RedundantPresentationWarning,
    class_group,
    conic_classes_generic,
    conic_predicate_segre3,
    conic_set_segre3,
    conic_set_veronese2,
    presentation,
    segre3_parameterization,
)
from segrecm.oracle import hilbert_coeff_brute, serre_noncm_certificate
from segrecm.report import veronese2_report
from segrecm.series import a_invariant, coefficient

SEGRE_GRID = [Segre3Params(*t) for t in itertools.product(range(2, 6), repeat=3)]
VERONESE_GRID = [Veronese2Params(*t) for t in itertools.product(range(1, 5), repeat=4) if gcd(t[2], t[3]) == 1]
VERONESE_SMALL = [p for p in VERONESE_GRID if max(p.as_tuple()) <= 3]


def cm_formula(m, n, p):
    return (m * m + n * n + p * p) + (m * n + m * p + n * p) - 2 * (m + n + p) + 1


def conic_formula(m, n, p):
    return (m * n + m * p + n * p) - (m + n + p) + 1


def report(number, title, failures, extra=""):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number:>2}: {status}  {title}" + (f"  [{extra}]" if extra else "")
    if failures:
        line += f"  first failures: {failures[:3]}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not failures, line


@pytest.fixture(scope="module")
def cm_regions():
    start = time.perf_counter()
    regions = {p: set(cm_region_segre3(p)) for p in SEGRE_GRID}
    regions_elapsed.append(time.perf_counter() - start)
    return regions


regions_elapsed: list[float] = []


@pytest.fixture(scope="module")
def veronese_cm():
    return {p: set(cm_set_veronese2(p)) for p in VERONESE_GRID}


@pytest.fixture(scope="module")
def veronese_conic():
    return {p: conic_set_veronese2(p) for p in VERONESE_GRID}


def test_criterion_01_segre3_cm_count(cm_regions):
    failures = [(p.as_tuple(), len(r), cm_formula(*p.as_tuple())) for p, r in cm_regions.items()
                if len(r) != cm_formula(*p.as_tuple())]
    assert len(cm_regions[Segre3Params(2, 2, 2)]) == 13 and len(cm_regions[Segre3Params(2, 3, 4)]) == 38
    elapsed = regions_elapsed[0]
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s")
    report(1, "segre3 CM count equals formula", failures, f"{len(cm_regions)} parameter sets in {elapsed:.1f}s")


def test_criterion_02_segre3_conic_count():
    failures = []
    three_way = 0
    for p in SEGRE_GRID:
        m, n, pp = p.as_tuple()
        closed = conic_set_segre3(p, cross_check=False)
        if len(closed) != conic_formula(m, n, pp):
            failures.append((p.as_tuple(), "count", len(closed), conic_formula(m, n, pp)))
        if max(m, n, pp) <= 4:
            three_way += 1
            pres = presentation(p)
            bridge = LabelBridge(pres)
            generic = sorted(bridge.label(cls) for cls in conic_classes_generic(pres))
            if not (closed == sorted(segre3_parameterization(p)) == generic):
                failures.append((p.as_tuple(), "routes disagree"))
    report(2, "segre3 conic count equals formula; predicate, parameterization, enumerator agree",
           failures, f"three-way on {three_way} sets")


def test_criterion_03_conic_subset_cm(cm_regions, veronese_cm, veronese_conic):
    failures = []
    for p, region in cm_regions.items():
        w = p.window()
        conic = {(i, j) for i in range(-w, w + 1) for j in range(-w, w + 1) if conic_predicate_segre3(p, i, j)}
        failures += [(p.as_tuple(), lab) for lab in conic - region]
    for p, cm in veronese_cm.items():
        failures += [(p.as_tuple(), lab) for lab in set(veronese_conic[p].generic) - cm]
    report(3, "conic classes are CM in both families", failures,
           f"{len(cm_regions)} segre3 + {len(veronese_cm)} veronese2 sets")


def test_criterion_04_cm_exceeds_conic(cm_regions):
    failures = [p.as_tuple() for p, r in cm_regions.items()
                if not len(r) > len(conic_set_segre3(p, cross_check=False))]
    report(4, "segre3 CM count strictly exceeds conic count", failures)


def test_criterion_05_bruns_guerrieri():
    failures, cases = [], 0
    for m, n in itertools.product(range(2, 7), repeat=2):
        for i in range(-10, 11):
            cases += 1
            ev = sv_test(PolyRing(m), Shift(PolyRing(n), i))
            expected = -(m - 1) <= i <= n - 1
            if (ev.verdict is Verdict.CM) != expected or ev.verdict is Verdict.INAPPLICABLE:
                failures.append((m, n, i))
            if expected and a_invariant(series_of(Segre(PolyRing(m), Shift(PolyRing(n), i)))) != -max(m, n - i):
                failures.append((m, n, i, "a-invariant"))
    assert cases == 525
    report(5, "SV test reproduces Bruns-Guerrieri interval and a-invariant", failures, f"{cases} cases")


def test_criterion_06_veronese2_cm(veronese_cm):
    failures = []
    for p, cm in veronese_cm.items():
        m, n, c, d = p.as_tuple()
        if not set(range(-d * m + 1, c * n)) <= cm:
            failures.append((p.as_tuple(), "range"))
        if c == 1 and len(cm) != d * m + n - 1:
            failures.append((p.as_tuple(), "c=1 size", len(cm)))
        if d == 1 and len(cm) != m + c * n - 1:
            failures.append((p.as_tuple(), "d=1 size", len(cm)))
    special = veronese_cm[Veronese2Params(3, 2, 2, 3)]
    if 5 not in special:
        failures.append(((3, 2, 2, 3), "class 5 missing"))
    report(6, "veronese2 CM sets contain the guaranteed range; exact sizes for c=1, d=1; class 5 at (3,2,2,3)",
           failures, f"{len(veronese_cm)} parameter sets")


def test_criterion_07_oracle_equivalence():
    start = time.perf_counter()
    failures, comparisons = [], 0
    for p in (Segre3Params(*t) for t in itertools.product(range(2, 4), repeat=3)):
        for label in itertools.product(range(-4, 5), repeat=2):
            s = series_of(p.module_expr(label))
            for k in range(-4, 11):
                comparisons += 1
                if coefficient(s, k) != hilbert_coeff_brute(p, label, k):
                    failures.append((p.as_tuple(), label, k))
    for p in VERONESE_SMALL:
        for i in range(-6, 7):
            s = series_of(p.module_expr(i))
            for k in range(-4, 11):
                comparisons += 1
                if coefficient(s, k) != hilbert_coeff_brute(p, i, k):
                    failures.append((p.as_tuple(), i, k))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s")
    report(7, "series engine equals brute lattice-point counts", failures,
           f"{comparisons} comparisons in {elapsed:.1f}s")


def test_criterion_08_serre_consistency(cm_regions):
    failures = []
    cert = serre_noncm_certificate(Segre3Params(2, 2, 2), (2, 3))
    if cert is None or not (cert.mu_lower_bound >= 8 > 6 == cert.ring_multiplicity):
        failures.append(("(2,2,2) (2,3)", cert))
    checked = 0
    for p, region in cm_regions.items():
        for label in region:
            checked += 1
            if serre_noncm_certificate(p, label) is not None:
                failures.append((p.as_tuple(), label))
    report(8, "Serre certificate fires on (2,2,2) class (2,3) and never on a CM class", failures,
           f"mu >= {cert.mu_lower_bound if cert else '?'} > e = 6; {checked} CM classes checked")


def test_criterion_09_class_groups():
    failures = []
    for p in SEGRE_GRID:
        g = class_group(presentation(p))
        if (g.free_rank, g.torsion) != (2, ()):
            failures.append(p.as_tuple())
    checked = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RedundantPresentationWarning)
        for p in VERONESE_GRID:
            if p.m + p.n >= 3:
                checked += 1
                g = class_group(presentation(p))
                if (g.free_rank, g.torsion) != (1, ()):
                    failures.append(p.as_tuple())
    report(9, "class groups Z^2 (segre3) and Z (veronese2, m+n >= 3)", failures,
           f"{len(SEGRE_GRID)} + {checked} presentations")


def test_criterion_10_veronese2_conic_comparison(veronese_cm, veronese_conic):
    failures, flagged, corollary_misses = [], [], []
    for p in VERONESE_SMALL:
        m, n, c, d = p.as_tuple()
        conic = veronese_conic[p]
        equality_case = (d - 1) * (m - 1) + (c - 1) * (n - 1) == 0
        agrees = conic.formula == len(conic.generic)
        if equality_case and not agrees:
            failures.append((p.as_tuple(), conic.formula, len(conic.generic)))
        kinds = {x["kind"] for x in veronese2_report(p).discrepancies}
        if agrees == ("conic-formula" in kinds):
            failures.append((p.as_tuple(), "report flag mismatch"))
        if not agrees:
            flagged.append(p.as_tuple())
        equal_counts = len(veronese_cm[p]) == len(conic.generic)
        if equal_counts != ((c == d == 1) or (c == m == 1) or (d == n == 1)):
            corollary_misses.append(p.as_tuple())
    report(10, "veronese2 conic formula exact in its equality cases; other cases flagged", failures,
           f"{len(VERONESE_SMALL)} sets, {len(flagged)} flagged, equality condition of the corollary "
           f"misses {len(corollary_misses)} sets")


def test_criterion_11_verify_determinism(tmp_path):
    outputs = []
    for run in range(2):
        path = tmp_path / f"verify{run}.txt"
        proc = subprocess.run([sys.executable, "-m", "segrecm", "verify", "--threads", "1", "--out", str(path)],
                              capture_output=True)
        outputs.append((proc.returncode, path.read_bytes()))
    failures = []
    if outputs[0][1] != outputs[1][1]:
        failures.append("reports differ")
    if any(code != 0 for code, _ in outputs):
        failures.append(f"exit codes {[code for code, _ in outputs]}")
    text = outputs[0][1].decode()
    segre_lines = [line for line in text.splitlines() if line.endswith("CM > conic")]
    if len(segre_lines) != len(SEGRE_GRID):
        failures.append(f"{len(segre_lines)} 'CM > conic' rows")
    if " agree |" not in text or "disagree |" not in text:
        failures.append("formula comparison column missing")
    report(11, "two verify runs are byte-identical", failures, f"{len(outputs[0][1])} bytes")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
