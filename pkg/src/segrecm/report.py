"""Per-family reports: class records, counts, formula comparisons and region maps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .cm import (
    CMDecision,
    classify_segre3,
    classify_veronese2,
    count_formulas,
    segre3_case_tallies,
)
from .families import Segre3Params, Veronese2Params
from .geometry import conic_predicate_segre3, conic_set_veronese2
from .oracle import serre_noncm_certificate

SEGRE3_COLUMNS = ["i", "j", "cm", "conic", "pairing", "a1", "r1", "a2", "r2"]
VERONESE2_COLUMNS = ["i", "cm", "conic", "lhs1", "rhs1", "lhs2", "rhs2"]

CELL_CONIC, CELL_CM, CELL_NOT_CM = "C", "M", "."


class InvariantViolation(RuntimeError):
    """A record claims a conic class that is not Cohen-Macaulay."""


@dataclass(frozen=True)
class ClassRecord:
    label: tuple[int, int] | int
    cm: bool
    conic: bool
    certificate: dict
    serre: dict | None = None

    def __post_init__(self):
        if self.conic and not self.cm:
            raise InvariantViolation(f"class {self.label} is conic but not Cohen-Macaulay")

    @property
    def cell(self) -> str:
        if self.conic:
            return CELL_CONIC
        return CELL_CM if self.cm else CELL_NOT_CM

    def to_json(self) -> dict:
        out = {"label": list(self.label) if isinstance(self.label, tuple) else self.label,
               "cm": "CM" if self.cm else "NotCM", "conic": self.conic,
               "certificate": self.certificate}
        if self.serre is not None:
            out["serre"] = self.serre
        return out


@dataclass
class FamilyReport:
    family: str
    params: dict
    classes: list[ClassRecord]
    counts: dict
    formulas: dict
    discrepancies: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    display: tuple[int, int] | None = None

    def shown(self) -> list[ClassRecord]:
        if self.display is None:
            return self.classes
        lo, hi = self.display

        def inside(label):
            coords = label if isinstance(label, tuple) else (label,)
            return all(lo <= x <= hi for x in coords)

        return [r for r in self.classes if inside(r.label)]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "counts": self.counts,
            "formulas": self.formulas,
            "classes": [r.to_json() for r in self.shown()],
            "discrepancies": self.discrepancies,
            "notes": self.notes,
        }


def _segre3_certificate(decision: CMDecision) -> dict:
    label, ev = decision.deciding_certificate()
    return {"pairing": label, "a1": ev.a1, "r1": ev.r1, "a2": ev.a2, "r2": ev.r2,
            "verdict": ev.verdict.value}


def segre3_report(params: Segre3Params, display=None, serre: bool = False, serre_window: int = 2) -> FamilyReport:
    w = params.window()
    records = []
    for i in range(-w, w + 1):
        for j in range(-w, w + 1):
            decision = classify_segre3(params, i, j)
            cert = None
            if serre and not decision.is_cm:
                c = serre_noncm_certificate(params, (i, j), window=serre_window)
                cert = None if c is None else {"mu_lower_bound": c.mu_lower_bound,
                                               "ring_multiplicity": c.ring_multiplicity}
            records.append(ClassRecord((i, j), decision.is_cm, conic_predicate_segre3(params, i, j),
                                       _segre3_certificate(decision), cert))
    cm_region = [r.label for r in records if r.cm]
    boundary = [lab for lab in cm_region if w in (abs(lab[0]), abs(lab[1]))]
    if boundary:
        raise InvariantViolation(f"CM classes on the window boundary: {boundary}")
    formulas = count_formulas(params)
    n_cm = len(cm_region)
    n_conic = sum(r.conic for r in records)
    tallies = segre3_case_tallies(params, cm_region)
    discrepancies = [
        {"kind": "case-tally", "severity": "soft", "case": t.case, "computed": t.computed, "quoted": t.quoted}
        for t in tallies if not t.agrees
    ]
    for name, computed, quoted in (("cm-count", n_cm, formulas.cm), ("conic-count", n_conic, formulas.conic)):
        if computed != quoted:
            discrepancies.append({"kind": name, "severity": "hard", "computed": computed, "quoted": quoted})
    return FamilyReport(
        "segre3",
        {"m": params.m, "n": params.n, "p": params.p},
        records,
        {"cm": n_cm, "conic": n_conic, "cm_not_conic": n_cm - n_conic,
         "cases": [t.computed for t in tallies]},
        {"cm": formulas.cm, "conic": formulas.conic, "cases": list(formulas.cases),
         "cm_agrees": n_cm == formulas.cm, "conic_agrees": n_conic == formulas.conic},
        discrepancies,
        display=display,
    )


def _veronese2_certificate(decision: CMDecision) -> dict:
    ev = decision.certificates[0][1]
    return {"lhs1": ev.a1 + 1, "rhs1": ev.r2, "lhs2": ev.a2 + 1, "rhs2": ev.r1,
            "formula_level": decision.formula_level}


def veronese2_report(params: Veronese2Params, display=None) -> FamilyReport:
    lo, hi = params.window()
    conic = conic_set_veronese2(params)
    conic_labels = set(conic.generic)
    records = []
    for i in range(lo, hi + 1):
        decision = classify_veronese2(params, i)
        records.append(ClassRecord(i, decision.is_cm, i in conic_labels, _veronese2_certificate(decision)))
    m, n, c, d = params.as_tuple()
    cm_set = [r.label for r in records if r.cm]
    guaranteed = (-d * m + 1, c * n - 1)
    outside = [i for i in cm_set if not guaranteed[0] <= i <= guaranteed[1]]
    formulas = count_formulas(params)
    discrepancies = []
    if conic.formula != len(conic.generic):
        discrepancies.append({"kind": "conic-formula", "severity": "soft", "formula": conic.formula,
                              "enumerated": len(conic.generic),
                              "equality_case": (d - 1) * (m - 1) + (c - 1) * (n - 1) == 0})
    if conic.parameterization != conic.generic:
        discrepancies.append({"kind": "conic-parameterization", "severity": "soft",
                              "parameterization": list(conic.parameterization), "enumerated": list(conic.generic)})
    if conic.interval != conic.generic:
        discrepancies.append({"kind": "conic-interval", "severity": "soft",
                              "interval": list(conic.interval), "enumerated": list(conic.generic)})
    missing = [i for i in range(guaranteed[0], guaranteed[1] + 1) if i not in cm_set]
    if missing:
        discrepancies.append({"kind": "cm-range", "severity": "hard", "missing": missing})
    notes = []
    if m == 1 or n == 1:
        notes.append("formula-level: a factor has Krull dimension 1, so only the ceiling inequalities are "
                     "evaluated; the coordinate presentation is redundant")
    if m == 1 and n == 1:
        notes.append(f"ring has Krull dimension 1: every class is CM under the geometric reading; "
                     f"the inequalities have {len(cm_set)} solutions versus c+d-1 = {c + d - 1}")
    return FamilyReport(
        "veronese2",
        {"m": m, "n": n, "c": c, "d": d, "u": params.bezout.u, "v": params.bezout.v},
        records,
        {"cm": len(cm_set), "conic": len(conic.generic), "cm_outside_guaranteed": outside,
         "conic_parameterization": len(conic.parameterization)},
        {"conic": formulas.conic, "cm_lower_bound": formulas.cm_lower_bound,
         "guaranteed_range": list(guaranteed), "conic_interval": [-d * m + 1, c * n - 1],
         "conic_agrees": formulas.conic == len(conic.generic),
         "cm_bound_holds": len(cm_set) >= formulas.cm_lower_bound},
        discrepancies,
        notes,
        display=display,
    )


def region_map(report: FamilyReport) -> str:
    """Text grid: ``C`` conic, ``M`` CM but not conic, ``.`` not CM."""
    shown = report.shown()
    if report.family == "veronese2":
        labels = [r.label for r in shown]
        cells = "".join(r.cell for r in shown)
        return f"i = {labels[0]} .. {labels[-1]}\n{cells}\n" if labels else ""
    cells = {r.label: r.cell for r in shown}
    i_vals = sorted({lab[0] for lab in cells})
    j_vals = sorted({lab[1] for lab in cells}, reverse=True)
    width = max(len(str(v)) for v in i_vals + j_vals)
    lines = []
    for j in j_vals:
        row = " ".join(cells[(i, j)].rjust(width) for i in i_vals)
        lines.append(f"j={str(j).rjust(width)} | {row}")
    lines.append(" " * (width + 3) + "+" + "-" * (len(i_vals) * (width + 1)))
    lines.append(" " * (width + 4) + " ".join(str(i).rjust(width) for i in i_vals) + "   (i)")
    return "\n".join(lines) + "\n"


def render_csv(report: FamilyReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report.family == "segre3":
        writer.writerow(SEGRE3_COLUMNS)
        for r in report.shown():
            c = r.certificate
            writer.writerow([r.label[0], r.label[1], "CM" if r.cm else "NotCM", str(r.conic).lower(),
                             c["pairing"], c["a1"], c["r1"], c["a2"], c["r2"]])
    else:
        writer.writerow(VERONESE2_COLUMNS)
        for r in report.shown():
            c = r.certificate
            writer.writerow([r.label, "CM" if r.cm else "NotCM", str(r.conic).lower(),
                             c["lhs1"], c["rhs1"], c["lhs2"], c["rhs2"]])
    return buf.getvalue()


def render_json(report: FamilyReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"


def render_text(report: FamilyReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in report.params.items())
    out = [f"{report.family} ({params})", ""]
    counts, formulas = report.counts, report.formulas
    if report.family == "segre3":
        out.append(f"CM classes:    {counts['cm']}  (formula {formulas['cm']}, "
                   f"{'agree' if formulas['cm_agrees'] else 'DISAGREE'})")
        out.append(f"conic classes: {counts['conic']}  (formula {formulas['conic']}, "
                   f"{'agree' if formulas['conic_agrees'] else 'DISAGREE'})")
        out.append(f"CM but not conic: {counts['cm_not_conic']}")
        out.append("case tallies:  " + " ".join(str(x) for x in counts["cases"])
                   + "  (quoted " + " ".join(str(x) for x in formulas["cases"]) + ")")
    else:
        lo, hi = formulas["guaranteed_range"]
        out.append(f"CM classes:    {counts['cm']}  (lower bound dm+cn-1 = {formulas['cm_lower_bound']})")
        out.append(f"conic classes: {counts['conic']}  (formula m+n+c+d-3 = {formulas['conic']}, "
                   f"{'agree' if formulas['conic_agrees'] else 'DISAGREE'})")
        out.append(f"guaranteed CM range: [{lo}, {hi}]")
        outside = counts["cm_outside_guaranteed"]
        out.append("CM outside guaranteed range: " + (", ".join(map(str, outside)) if outside else "none"))
        cm = [r.label for r in report.classes if r.cm]
        conic = [r.label for r in report.classes if r.conic]
        out.append("CM set:    {" + ", ".join(map(str, cm)) + "}")
        out.append("conic set: {" + ", ".join(map(str, conic)) + "}")
    out += ["", "region map (C conic, M CM not conic, . not CM):", region_map(report).rstrip("\n")]
    if report.discrepancies:
        out += ["", "discrepancies:"]
        for item in report.discrepancies:
            detail = ", ".join(f"{k}={v}" for k, v in item.items() if k not in ("kind", "severity"))
            out.append(f"  [{item['severity']}] {item['kind']}: {detail}")
    for note in report.notes:
        out.append(f"note: {note}")
    return "\n".join(out) + "\n"
