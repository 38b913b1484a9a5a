"""Structured results: violation records and report serialization.

Reports are deterministic: rows are emitted in (claim_id, n, b) order, exact
values are carried as 'num/den' strings (bit-exact) next to display-only
decimal renderings, and no timestamps enter the data section.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field

from .backend import as_rat, decimal_str, rat_str

CSV_HEADER = ["claim_id", "b", "n", "status", "lhs", "rhs", "raw_lhs", "raw_rhs"]
SCAN_P_HEADER = ["claim_id", "b", "n", "sign", "boundary_ok"]


@dataclass(frozen=True)
class ViolationReport:
    """One failed (or otherwise notable) comparison at a single point."""

    claim_id: str
    b: int
    n: int
    lhs: str  # display decimal
    rhs: str
    raw_lhs: str  # exact num/den
    raw_rhs: str
    note: str = ""

    @classmethod
    def from_rationals(cls, claim_id, b, n, lhs, rhs, note="") -> "ViolationReport":
        lhs, rhs = as_rat(lhs), as_rat(rhs)
        return cls(
            claim_id=claim_id,
            b=b,
            n=n,
            lhs=decimal_str(lhs),
            rhs=decimal_str(rhs),
            raw_lhs=rat_str(lhs),
            raw_rhs=rat_str(rhs),
            note=note,
        )

    def as_row(self) -> list:
        return ["violation", self.claim_id, self.b, self.n, self.lhs, self.rhs,
                self.raw_lhs, self.raw_rhs, self.note]

    def as_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "b": self.b,
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "raw_lhs": self.raw_lhs,
            "raw_rhs": self.raw_rhs,
            "note": self.note,
        }


@dataclass
class Report:
    """A full run: metadata, result rows, violations and inconclusive count."""

    meta: dict
    header: list
    results: list = field(default_factory=list)  # list of row lists
    violations: list = field(default_factory=list)  # list of ViolationReport
    inconclusive: int = 0

    def exit_code(self) -> int:
        if self.violations:
            return 1
        if self.inconclusive:
            return 2
        return 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.results:
            writer.writerow(row)
        if self.violations:
            writer.writerow([])
            writer.writerow(["violation"] + CSV_HEADER + ["note"])
            for v in self.violations:
                writer.writerow(v.as_row())
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "meta": self.meta,
            "results": [dict(zip(self.header, row)) for row in self.results],
            "violations": [v.as_dict() for v in self.violations],
            "inconclusive": self.inconclusive,
        }
        return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"

    def write(self, path: str, fmt: str = "csv") -> None:
        """Atomic write: render fully, write to a sibling temp file, rename."""
        payload = self.to_csv() if fmt == "csv" else self.to_json()
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        os.replace(tmp, path)


def merge_reports(reports: list) -> Report:
    """Deterministic merge: rows sorted by (claim_id, n, b) where available."""
    if not reports:
        return Report(meta={"merged": 0}, header=CSV_HEADER)
    header = reports[0].header
    merged = Report(meta={"merged": len(reports)}, header=header)
    rows = []
    for rep in reports:
        if rep.header != header:
            raise ValueError("cannot merge reports with different schemas")
        rows.extend(rep.results)
        merged.violations.extend(rep.violations)
        merged.inconclusive += rep.inconclusive
    merged.results = sorted(rows, key=lambda r: tuple(str(x) for x in r))
    merged.violations.sort(key=lambda v: (v.claim_id, v.n, v.b))
    return merged
