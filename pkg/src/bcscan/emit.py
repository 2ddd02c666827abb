"""Rendering of scan results: aligned text table, JSON, CSV.

JSON carries a schema_version field and is the only format meant to be
read back; parse_scan_json inverts render_json exactly.  Timings never
reach any rendered format, so equal scans emit byte-identical output
regardless of thread count or clock.
"""

from __future__ import annotations

import csv
import io
import json

from .fields import FieldError
from .herbrand import (
    DIM_AT_LEAST_ONE,
    IndexClassification,
    PrimeReport,
    ScanResult,
    strip_timings,
)

SCHEMA_VERSION = "1"

LOWER_BOUND_NOTE = (
    "(*) >=1 is a lower bound: the index has positive L-valuation, and the"
    " deduction chain pins the dimension only from below; settling exactness"
    " needs a direct curve-cohomology computation, which this tool does not do."
)

NO_INTERPRETATION_BANNER = (
    "indices with (q-1) not dividing n: raw data only, no dimension claim"
)


def _fmt_indices(ns) -> str:
    return "{" + ", ".join(str(n) for n in ns) + "}"


def _dim_column(report: PrimeReport) -> str:
    dims = [c.h1_dim for c in report.classifications if c.bc_divisible]
    return ", ".join(dims)


def render_table(result: ScanResult, detail: bool = False) -> str:
    """Three-column overview; with detail=True, per-index listings too."""
    out = io.StringIO()
    rows = [("prime", "indices", "dim")]
    for rep in result.reports:
        rows.append((rep.prime, _fmt_indices(rep.irregular_indices), _dim_column(rep)))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    for r in rows:
        out.write("  ".join(col.ljust(w) for col, w in zip(r, widths)).rstrip() + "\n")
    field = f"F_{result.q}"
    if result.fq_modulus:
        field += f" = F_p[x]/({result.fq_modulus})"
    irregular = sum(1 for rep in result.reports if rep.irregular_indices)
    out.write(
        f"\nscanned {result.primes_scanned} primes of degree <= {result.max_degree}"
        f" over {field}; {irregular} irregular\n"
    )
    if any(DIM_AT_LEAST_ONE in r[2] for r in rows[1:]):
        out.write(LOWER_BOUND_NOTE + "\n")
    if detail:
        for rep in result.reports:
            out.write("\n" + _render_detail(rep))
    return out.getvalue()


def _render_detail(report: PrimeReport) -> str:
    out = io.StringIO()
    out.write(f"{report.prime}  (degree {report.degree}, q={report.q})\n")
    in_scope = [c for c in report.classifications if c.q_minus_1_divides]
    off = [c for c in report.classifications if not c.q_minus_1_divides]
    for c in in_scope:
        pic = "-" if c.pic_length is None else str(c.pic_length)
        flag = "BC_n = 0" if c.bc_divisible else "BC_n unit"
        out.write(f"  n={c.n:<4d} {flag:<9s}  v(L)={pic:<3s} dim {c.h1_dim}\n")
    if off:
        out.write(f"  {NO_INTERPRETATION_BANNER}\n")
        for c in off:
            out.write(f"  n={c.n:<4d} v(S_n(1))={c.diagnostics.get('s1_valuation')}\n")
    return out.getvalue()


def _classification_obj(c: IndexClassification) -> dict:
    return {
        "n": c.n,
        "q_minus_1_divides": c.q_minus_1_divides,
        "bc_divisible": c.bc_divisible,
        "pic_length": c.pic_length,
        "h1_dim": c.h1_dim,
        "diagnostics": dict(c.diagnostics),
    }


def render_json(result: ScanResult) -> str:
    result = strip_timings(result)
    obj = {
        "schema_version": SCHEMA_VERSION,
        "q": result.q,
        "fq_modulus": result.fq_modulus,
        "max_degree": result.max_degree,
        "precision": result.precision,
        "primes_scanned": result.primes_scanned,
        "reports": [
            {
                "prime": rep.prime,
                "degree": rep.degree,
                "irregular_indices": list(rep.irregular_indices),
                "witt_precision": rep.witt_precision,
                "classifications": [
                    _classification_obj(c) for c in rep.classifications
                ],
            }
            for rep in result.reports
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def parse_scan_json(text: str) -> ScanResult:
    obj = json.loads(text)
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise FieldError(f"unsupported schema version {obj.get('schema_version')!r}")
    reports = tuple(
        PrimeReport(
            q=obj["q"],
            prime=rep["prime"],
            degree=rep["degree"],
            irregular_indices=tuple(rep["irregular_indices"]),
            witt_precision=rep["witt_precision"],
            classifications=tuple(
                IndexClassification(
                    n=c["n"],
                    q_minus_1_divides=c["q_minus_1_divides"],
                    bc_divisible=c["bc_divisible"],
                    pic_length=c["pic_length"],
                    h1_dim=c["h1_dim"],
                    diagnostics=c["diagnostics"],
                )
                for c in rep["classifications"]
            ),
        )
        for rep in obj["reports"]
    )
    return ScanResult(
        q=obj["q"],
        fq_modulus=obj["fq_modulus"],
        max_degree=obj["max_degree"],
        precision=obj["precision"],
        primes_scanned=obj["primes_scanned"],
        reports=reports,
    )


def render_csv(result: ScanResult) -> str:
    """One row per (prime, n), fixed columns, RFC-style quoting."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(
        ["q", "prime", "degree", "n", "in_scope", "bc_divisible", "pic_length", "h1_dim"]
    )
    for rep in result.reports:
        for c in rep.classifications:
            w.writerow(
                [
                    result.q,
                    rep.prime,
                    rep.degree,
                    c.n,
                    str(c.q_minus_1_divides).lower(),
                    str(c.bc_divisible).lower(),
                    "" if c.pic_length is None else c.pic_length,
                    c.h1_dim,
                ]
            )
    return out.getvalue()


def emit(result: ScanResult, format: str = "table", out=None, detail: bool = False) -> str:
    """Render and optionally write; returns the rendered text either way."""
    if format == "table":
        text = render_table(result, detail=detail)
    elif format == "json":
        text = render_json(result)
    elif format == "csv":
        text = render_csv(result)
    else:
        raise FieldError(f"unknown output format {format!r}")
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
