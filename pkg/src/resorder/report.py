"""Tabular reports and their human, CSV and JSON renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction
from typing import Optional

from .eulerprod import Constant, DensityValue, format_value

# the g column of the two comparison tables (order mod 3 and order mod 4)
TABLE1_G = ("-14^4", "-196", "-3^8", "-3", "-2", "3", "9", "81", "6561", "2", "4", "5", "25", "49", "2401")
TABLE2_G = ("-216", "-9", "-81", "2", "4", "8", "512", "216", "2048", "6^9", "6^27")


def truncate8(x: float) -> str:
    """Eight decimals, truncated toward zero, with an explicit sign for non-zero values."""
    if x == 0:
        return "0"
    q = Decimal(repr(float(x))).quantize(Decimal("1e-8"), rounding=ROUND_DOWN)
    return f"{q:+.8f}"


@dataclass
class Row:
    label: str
    exact: Optional[DensityValue]
    numeric: float
    empirical: Optional[float] = None
    deviation: Optional[float] = None

    def to_json(self):
        out = {"label": self.label, "exact": None, "numeric": self.numeric}
        if self.exact is not None:
            out["exact"] = {
                "q0": str(self.exact.q0),
                "q1": str(self.exact.q1),
                "constant": self.exact.tag.value,
                "text": format_value(self.exact),
            }
        if self.empirical is not None:
            out["empirical"] = self.empirical
        if self.deviation is not None:
            out["deviation"] = self.deviation
        return out

    @classmethod
    def from_json(cls, obj) -> "Row":
        ex = obj.get("exact")
        exact = None
        if ex is not None:
            exact = DensityValue(Fraction(ex["q0"]), Fraction(ex["q1"]), Constant(ex["constant"]))
        return cls(obj["label"], exact, obj["numeric"], obj.get("empirical"), obj.get("deviation"))


@dataclass
class Report:
    command: str
    g: str
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_json(self):
        meta = {"cutoff": None, "primes": None, "grh_conditional": False, "runtime_ms": None}
        meta.update(self.meta)
        return {"command": self.command, "g": self.g, "rows": [r.to_json() for r in self.rows], "meta": meta}

    @classmethod
    def from_json(cls, obj) -> "Report":
        return cls(obj["command"], obj["g"], [Row.from_json(r) for r in obj["rows"]], dict(obj["meta"]))


def _exact_text(row: Row) -> str:
    return format_value(row.exact) if row.exact is not None else ""


def _opt(x: Optional[float]) -> str:
    return "" if x is None else truncate8(x)


def emit(report: Report, fmt: str = "human") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "exact", "numeric", "empirical", "deviation"])
        for r in report.rows:
            w.writerow([r.label, _exact_text(r), repr(r.numeric),
                        "" if r.empirical is None else repr(r.empirical),
                        "" if r.deviation is None else repr(r.deviation)])
        return buf.getvalue()
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}")
    header = ["label", "exact", "numeric", "empirical", "deviation"]
    body = [[r.label, _exact_text(r), truncate8(r.numeric), _opt(r.empirical), _opt(r.deviation)] for r in report.rows]
    keep = [i for i in range(5) if i < 3 or any(b[i] for b in body)]
    table = [[header[i] for i in keep]] + [[b[i] for i in keep] for b in body]
    widths = [max(len(line[i]) for line in table) for i in range(len(keep))]
    lines = [f"{report.command}  g={report.g}" if report.g else report.command]
    for line in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    extras = {k: v for k, v in report.meta.items() if v is not None and k != "grh_conditional"}
    if extras:
        lines.append("  ".join(f"{k}={v}" for k, v in extras.items()))
    if report.meta.get("grh_conditional"):
        lines.append("(densities conditional on GRH)")
    return "\n".join(lines) + "\n"
