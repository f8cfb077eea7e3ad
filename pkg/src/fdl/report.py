"""Bit-stable report serialization: JSON (sorted keys), CSV (documented
column order), or a plain text table."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .modular import DensityReport
from .search import Solution


@dataclass
class Report:
    kind: str
    columns: list[str]
    rows: list[dict]  # one dict per row; values must be str()-stable
    payload: object = None  # structure used for the JSON rendering

    def render(self, fmt: str) -> str:
        if fmt == "json":
            payload = self.payload if self.payload is not None else self.rows
            return json.dumps(payload, sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([_cell(row.get(c, "")) for c in self.columns])
            return buf.getvalue()
        if fmt == "table":
            cells = [[str(c) for c in self.columns]] + [
                [_cell(row.get(c, "")) for c in self.columns] for row in self.rows
            ]
            widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
            lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
            return "\n".join(lines) + "\n"
        raise ValueError(f"unknown output format: {fmt}")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "|".join(str(v) for v in value)
    return str(value)


def emit_report(report: Report, fmt: str, sink) -> None:
    """Write the rendered report to a file-like sink."""
    sink.write(report.render(fmt))


# -- round-trip helpers for the JSON payloads --------------------------------


def solutions_report(solutions) -> Report:
    return Report(
        kind="solutions",
        columns=["a", "b", "c", "k", "trivial"],
        rows=[s.to_json_dict() for s in solutions],
        payload=[s.to_json_dict() for s in solutions],
    )


def solutions_from_json(text: str) -> list[Solution]:
    return [
        Solution(a=r["a"], b=r["b"], c=r["c"], k=r["k"], trivial=r["trivial"])
        for r in json.loads(text)
    ]


def density_report(reports) -> Report:
    return Report(
        kind="density",
        columns=["k", "N", "primes", "no_root", "fraction_num", "fraction_den"],
        rows=[
            {
                "k": r.k,
                "N": r.N,
                "primes": r.primes_tested,
                "no_root": r.no_root_count,
                "fraction_num": r.fraction.numerator,
                "fraction_den": r.fraction.denominator,
            }
            for r in reports
        ],
        payload=[r.to_json_dict() for r in reports],
    )


def density_from_json(text: str) -> list[DensityReport]:
    return [
        DensityReport(
            k=r["k"],
            N=r["N"],
            primes_tested=r["primes_tested"],
            no_root_count=r["no_root_count"],
        )
        for r in json.loads(text)
    ]
