"""Report objects and their JSON, CSV and text renderings.

JSON is the canonical form: keys appear in a fixed order, rationals are
``{"num": "...", "den": "..."}`` with decimal strings, and every document
starts with ``schema_version`` and ``kind``.  ``from_dict(to_dict(r)) == r``
for every report type.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from . import alpha, strata
from .alpha import AlphaType, RamificationProfile
from .counting import CountReport, SlopeRow
from .quadratic import ClassFactor
from .verify import SuiteResult, VerifyConfig, VerifyReport

SCHEMA_VERSION = 1


def rational_to_json(x: Fraction) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(d: dict[str, str]) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def _opt_rational(x: Optional[Fraction]):
    return None if x is None else rational_to_json(x)


def _opt_rational_from(d) -> Optional[Fraction]:
    return None if d is None else rational_from_json(d)


# --- report types -------------------------------------------------------------


@dataclass(frozen=True)
class TypeRow:
    alpha: str
    size: int
    generic: bool
    supersingular: bool
    w: int
    # per block: lambda, and the slope parameter j of s(j, f_v)
    lambdas: tuple[int, ...]
    slope_params: tuple[Fraction, ...]


@dataclass(frozen=True)
class TypesReport:
    profile: RamificationProfile
    filter: str
    rows: tuple[TypeRow, ...]


@dataclass(frozen=True)
class ComponentRow:
    cells: str
    dimension: int


@dataclass(frozen=True)
class ComponentsReport:
    g: int
    tau: tuple[int, ...]
    equations: tuple[str, ...]
    generic: bool
    w: int
    max_dimension: int
    components: tuple[ComponentRow, ...]


Report = Union[TypesReport, ComponentsReport, CountReport, VerifyReport]


def types_report(profile: RamificationProfile, filter: str, max_g: int) -> TypesReport:
    rows = []
    for a in alpha.iter_types(profile, filter, max_g):
        slopes = tuple(alpha.slope_of_stratum(block).j for block in a.blocks)
        rows.append(TypeRow(str(a), alpha.size(a), alpha.is_generic(a), alpha.is_supersingular(a),
                            _weight_product(a), tuple(alpha.lambda_max(b) for b in a.blocks), slopes))
    return TypesReport(profile, filter, tuple(rows))


def _weight_product(a: AlphaType) -> int:
    out = 1
    for block in a.blocks:
        out *= alpha.weight_w(block)
    return out


def components_report(g: int, tau: tuple[int, ...], max_g: int) -> ComponentsReport:
    comps = strata.enumerate_components(g, tau, max_g)
    bits = tuple(int(i in tau) for i in range(g))
    return ComponentsReport(
        g, tuple(sorted(tau)), tuple(strata.equations_for(g, tau).describe()), alpha.is_generic(bits),
        alpha.weight_w(bits), max(x.dimension for x in comps),
        tuple(ComponentRow(str(x), x.dimension) for x in comps))


# --- dict conversion ----------------------------------------------------------


def _header(kind: str) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "kind": kind}


def _class_factor_to_dict(H: Optional[ClassFactor]):
    if H is None:
        return None
    return {"value": rational_to_json(H.value), "source": H.source, "D": H.D, "n": H.n,
            "index": H.index, "zeta_minus_one": _opt_rational(H.zeta)}


def _class_factor_from_dict(d) -> Optional[ClassFactor]:
    if d is None:
        return None
    return ClassFactor(rational_from_json(d["value"]), d["source"], d["D"], d["n"], d["index"],
                       _opt_rational_from(d["zeta_minus_one"]))


def to_dict(report: Report) -> dict[str, Any]:
    if isinstance(report, TypesReport):
        out = _header("types")
        out["profile"] = list(report.profile.degrees)
        out["filter"] = report.filter
        out["count"] = len(report.rows)
        out["rows"] = [{"alpha": r.alpha, "size": r.size, "generic": r.generic,
                        "supersingular": r.supersingular, "w": r.w, "lambda": list(r.lambdas),
                        "slope_params": [rational_to_json(j) for j in r.slope_params]}
                       for r in report.rows]
        return out
    if isinstance(report, ComponentsReport):
        out = _header("components")
        out.update({"g": report.g, "tau": list(report.tau), "equations": list(report.equations),
                    "generic": report.generic, "w": report.w, "max_dimension": report.max_dimension,
                    "count": len(report.components),
                    "components": [{"cells": c.cells, "dimension": c.dimension} for c in report.components]})
        return out
    if isinstance(report, CountReport):
        out = _header("count")
        out.update({
            "profile": list(report.profile.degrees),
            "p": report.p,
            "n": report.n,
            "class_factor": _class_factor_to_dict(report.class_factor),
            "total_components": report.total_components,
            "formula_variants": {k: rational_to_json(v) for k, v in report.formula_variants.items()},
            "slope_table": [{"j": list(r.j), "f": list(r.f),
                             "slopes": [rational_to_json(s) for s in r.slopes], "count": r.count}
                            for r in report.slope_table],
            "supersingular_component_count": report.supersingular_component_count,
            "superspecial_point_count": report.superspecial_point_count,
            "notes": list(report.notes),
        })
        return out
    if isinstance(report, VerifyReport):
        out = _header("verify")
        c = report.config
        out["config"] = {"seed": c.seed, "max_g": c.max_g, "fields": [f"{p}^{m}" for p, m in c.fields],
                         "samples": c.samples, "h_samples": c.h_samples, "engine": c.engine}
        out["passed"] = report.passed
        out["suites"] = [{"name": r.name, "passed": r.passed, "checks": r.checks,
                          "failures": r.failures, "examples": list(r.examples)} for r in report.results]
        return out
    raise TypeError(f"not a report: {type(report).__name__}")


def from_dict(d: dict[str, Any]) -> Report:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    kind = d.get("kind")
    if kind == "types":
        rows = tuple(TypeRow(r["alpha"], r["size"], r["generic"], r["supersingular"], r["w"],
                             tuple(r["lambda"]), tuple(rational_from_json(j) for j in r["slope_params"]))
                     for r in d["rows"])
        return TypesReport(RamificationProfile(tuple(d["profile"])), d["filter"], rows)
    if kind == "components":
        return ComponentsReport(d["g"], tuple(d["tau"]), tuple(d["equations"]), d["generic"], d["w"],
                                d["max_dimension"],
                                tuple(ComponentRow(c["cells"], c["dimension"]) for c in d["components"]))
    if kind == "count":
        table = tuple(SlopeRow(tuple(r["j"]), tuple(r["f"]), r["count"]) for r in d["slope_table"])
        return CountReport(
            RamificationProfile(tuple(d["profile"])), _class_factor_from_dict(d["class_factor"]),
            d["total_components"], table, d["supersingular_component_count"],
            {k: rational_from_json(v) for k, v in d["formula_variants"].items()},
            d["p"], d["n"], d["superspecial_point_count"], tuple(d["notes"]))
    if kind == "verify":
        c = d["config"]
        fields = tuple(tuple(int(x) for x in f.split("^")) for f in c["fields"])
        config = VerifyConfig(c["max_g"], fields, c["samples"], c["h_samples"], c["seed"], c["engine"])
        results = [SuiteResult(s["name"], s["checks"], s["failures"], list(s["examples"]))
                   for s in d["suites"]]
        return VerifyReport(config, results)
    raise ValueError(f"unknown report kind {kind!r}")


# --- renderings ---------------------------------------------------------------


def to_json(report: Report) -> str:
    return json.dumps(to_dict(report), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> Report:
    return from_dict(json.loads(text))


def _fmt(x: Fraction) -> str:
    return str(Fraction(x))


def _csv_rows(report: Report) -> list[list[Any]]:
    if isinstance(report, TypesReport):
        rows = [["alpha", "size", "generic", "supersingular", "w", "lambda", "slope_params"]]
        rows += [[r.alpha, r.size, int(r.generic), int(r.supersingular), r.w,
                  "|".join(map(str, r.lambdas)), "|".join(_fmt(j) for j in r.slope_params)]
                 for r in report.rows]
        return rows
    if isinstance(report, ComponentsReport):
        rows = [["g", "tau", "component", "dimension"]]
        tau = ",".join(map(str, report.tau))
        rows += [[report.g, tau, c.cells, c.dimension] for c in report.components]
        return rows
    if isinstance(report, CountReport):
        rows = [["record", "key", "value"]]
        rows.append(["profile", "", str(report.profile)])
        H = report.class_factor
        rows.append(["class_factor", H.source if H else "", _fmt(H.value) if H else ""])
        rows.append(["total_components", "", report.total_components])
        for name, v in report.formula_variants.items():
            rows.append(["formula_variant", name, _fmt(v)])
        for r in report.slope_table:
            key = ";".join(f"{j}/{f}" for j, f in zip(r.j, r.f))
            rows.append(["slope", key, r.count])
        rows.append(["supersingular_component_count", "", report.supersingular_component_count])
        if report.superspecial_point_count is not None:
            rows.append(["superspecial_point_count", f"p={report.p}", report.superspecial_point_count])
        return rows
    if isinstance(report, VerifyReport):
        rows = [["suite", "passed", "checks", "failures"]]
        rows += [[r.name, int(r.passed), r.checks, r.failures] for r in report.results]
        return rows
    raise TypeError(f"not a report: {type(report).__name__}")


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(_csv_rows(report))
    return buf.getvalue()


def to_text(report: Report) -> str:
    lines: list[str] = []
    if isinstance(report, TypesReport):
        lines.append(f"profile {report.profile}, filter {report.filter}: {len(report.rows)} types")
        for r in report.rows:
            flags = ("generic " if r.generic else "") + ("supersingular" if r.supersingular else "")
            slopes = ",".join(_fmt(j) for j in r.slope_params)
            lines.append(f"  {r.alpha:<16} |a|={r.size:<3} w={r.w:<5} lambda={','.join(map(str, r.lambdas))}"
                         f"  j={slopes}  {flags.strip()}")
    elif isinstance(report, ComponentsReport):
        lines.append(f"g={report.g}, tau={{{','.join(map(str, report.tau))}}}: "
                     f"{len(report.components)} components, max dimension {report.max_dimension}")
        lines.append("  equations: " + ", ".join(report.equations))
        for c in report.components:
            lines.append(f"  dim {c.dimension}: {c.cells}")
    elif isinstance(report, CountReport):
        H = report.class_factor
        lines.append(f"profile {report.profile}" + (f", p={report.p}" if report.p is not None else "")
                     + (f", n={report.n}" if report.n is not None else ""))
        lines.append(f"class factor H: {_fmt(H.value)} ({H.source})" if H else "class factor H: not needed")
        lines.append(f"total components: {report.total_components}")
        for name, v in report.formula_variants.items():
            lines.append(f"  {name}: {_fmt(v)}")
        lines.append("components by slope parameters (j_v/f_v):")
        for r in report.slope_table:
            lines.append(f"  {' '.join(f'{j}/{f}' for j, f in zip(r.j, r.f))}: {r.count}")
        lines.append(f"  supersingular: {report.supersingular_component_count}")
        if report.superspecial_point_count is not None:
            lines.append(f"superspecial points: {report.superspecial_point_count}")
        for note in report.notes:
            lines.append(f"note: {note}")
    elif isinstance(report, VerifyReport):
        c = report.config
        lines.append(f"seed {c.seed}, max_g {c.max_g}, fields {','.join(f'{p}^{m}' for p, m in c.fields)}, "
                     f"samples {c.samples}, engine {c.engine}")
        for r in report.results:
            lines.append(f"  {'PASS' if r.passed else 'FAIL'} {r.name:<26} {r.checks:>9} checks"
                         f" {r.failures:>6} failures")
            for ex in r.examples:
                lines.append(f"       {ex}")
        lines.append("all suites passed" if report.passed else "verification FAILED")
    else:
        raise TypeError(f"not a report: {type(report).__name__}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")
